// Copyright 2026 The ANO Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>

#include <iostream>
#include <numbers>

#include "ano/commands.hpp"
#include "ano/kernels.hpp"

namespace {

void add_config_options(CLI::App *cmd, ano::ConfigOptions &options) {
    cmd->add_option("--config", options.config_path, "YAML run configuration");
    cmd->add_option("--seed", options.seed, "Base seed (trial t uses seed + t)");
    cmd->add_option("--trials", options.trials, "Number of seeded trials");
    cmd->add_option("--out", options.out, "Output directory");
    cmd->add_option("overrides", options.overrides, "Dotted overrides, e.g. circuit.k=3");
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Variational quantum classifiers with trainable k-local observables"};
    app.require_subcommand(1);
    std::string kernels;
    app.add_option("--kernels", kernels, "Kernel table: auto, scalar, avx2, neon");

    ano::ConfigOptions train;
    auto *train_cmd = app.add_subcommand("train", "Train n seeded trials and write metrics");
    add_config_options(train_cmd, train);

    ano::EvalOptions eval;
    auto *eval_cmd = app.add_subcommand("eval", "Accuracy of a checkpoint on its split");
    eval_cmd->add_option("checkpoint", eval.checkpoint, "Checkpoint JSON")->required();
    eval_cmd->add_option("--data", eval.data_root, "Dataset root directory");
    eval_cmd->add_option("--split", eval.split, "test or train");

    ano::GradcheckOptions grad;
    double shift = 0.0;
    double denominator = 2.0;
    auto *grad_cmd = app.add_subcommand("gradcheck", "Analytic gradients vs finite differences");
    add_config_options(grad_cmd, grad.config);
    grad_cmd->add_option("--samples", grad.samples, "Random inputs to check");
    grad_cmd->add_option("--step", grad.h, "Finite-difference step");
    grad_cmd->add_option("--tolerance", grad.tolerance, "Relative error bound");
    auto *shift_opt = grad_cmd->add_option(
        "--shift", shift, "Use the parameter-shift rule with this shift");
    grad_cmd->add_option("--shift-denominator", denominator, "Divisor of the shifted difference")
        ->needs(shift_opt);

    ano::SpectrumOptions spectrum;
    auto *spectrum_cmd = app.add_subcommand("spectrum", "Eigenvalues of a trained observable");
    spectrum_cmd->add_option("checkpoint", spectrum.checkpoint, "Checkpoint JSON")->required();
    spectrum_cmd->add_option("--group", spectrum.group, "Measurement group (0-based)");
    spectrum_cmd->add_flag("--json", spectrum.json, "Print one JSON object");

    ano::OracleOptions oracle;
    auto *oracle_cmd = app.add_subcommand("oracle", "Self-check against reference computations");
    oracle_cmd->add_option("suite", oracle.suite, "closedform, densekron or all");
    oracle_cmd->add_option("--cases", oracle.cases, "Random cases per suite");
    oracle_cmd->add_option("--seed", oracle.seed, "Seed");

    ano::ParamcountOptions count;
    auto *count_cmd = app.add_subcommand("paramcount", "Trainable parameter count");
    add_config_options(count_cmd, count.config);
    count_cmd->add_flag("--tables", count.tables, "Counts of the standard banknote and MNIST configurations");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return ano::kExitConfig;
    }

    if (!kernels.empty() && kernels != "auto") {
        if (!ano::kernels::select(kernels)) {
            std::cerr << "kernel table '" << kernels << "' is not available on this host\n";
            return ano::kExitConfig;
        }
    }

    if (*shift_opt) {
        grad.shift = ano::ShiftRule{shift, denominator};
    }

    auto &out = std::cout;
    auto &err = std::cerr;
    if (*train_cmd) {
        return ano::cmd_train(train, out, err);
    }
    if (*eval_cmd) {
        return ano::cmd_eval(eval, out, err);
    }
    if (*grad_cmd) {
        return ano::cmd_gradcheck(grad, out, err);
    }
    if (*spectrum_cmd) {
        return ano::cmd_spectrum(spectrum, out, err);
    }
    if (*oracle_cmd) {
        return ano::cmd_oracle(oracle, out, err);
    }
    return ano::cmd_paramcount(count, out, err);
}
