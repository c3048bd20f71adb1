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

#include "ano/commands.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <json.hpp>
#include <numbers>
#include <random>

#include "ano/checkpoint.hpp"
#include "ano/config.hpp"
#include "ano/errors.hpp"
#include "ano/oracle.hpp"
#include "ano/train.hpp"

namespace ano {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// Thrown for anything that goes wrong while reading a dataset.
class DataFailure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

int guarded(std::ostream &err, const std::function<int()> &body) {
    try {
        return body();
    } catch (const DataFailure &e) {
        err << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const ConfigError &e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const InputError &e) {
        err << "invalid input: " << e.what() << "\n";
        return kExitConfig;
    } catch (const FormatError &e) {
        err << "format error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const YAML::Exception &e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const fs::filesystem_error &e) {
        err << "filesystem error: " << e.what() << "\n";
        return kExitConfig;
    }
}

PreparedData load_data(const RunConfig &config, std::uint64_t seed,
                       const FeatureScaling *scaling = nullptr) {
    try {
        return prepare_data(config, seed, scaling);
    } catch (const ConfigError &) {
        throw;
    } catch (const std::exception &e) {
        throw DataFailure(e.what());
    }
}

RunConfig resolve(const ConfigOptions &options) {
    RunConfig c = options.config_path.empty() ? parse_config("", options.overrides)
                                              : load_config(options.config_path, options.overrides);
    if (options.seed) {
        c.seed = *options.seed;
    }
    if (options.trials) {
        c.trials = *options.trials;
    }
    if (options.out) {
        c.out = *options.out;
    }
    validate(c);
    return c;
}

json nullable(const std::optional<double> &v) { return v ? json(*v) : json(nullptr); }

json nan_as_null(const std::vector<double> &values) {
    json arr = json::array();
    for (double v : values) {
        arr.push_back(std::isfinite(v) ? json(v) : json(nullptr));
    }
    return arr;
}

std::string trial_dir_name(int trial) {
    std::ostringstream ss;
    ss << "trial_" << std::setw(3) << std::setfill('0') << trial;
    return ss.str();
}

void write_text(const fs::path &path, const std::string &text) {
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot write " + path.string());
    }
    out << text;
}

} // namespace

int cmd_train(const ConfigOptions &options, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        const RunConfig config = resolve(options);
        const fs::path root(config.out);
        fs::create_directories(root);
        write_text(root / "config.yaml", to_yaml(config));

        const std::size_t param_count = count_parameters(config.circuit);
        json trials = json::array();
        std::vector<double> finals;
        for (int t = 0; t < config.trials; ++t) {
            const std::uint64_t seed = trial_seed(config, t);
            const PreparedData data = load_data(config, seed);
            TrainConfig tc = config.train;
            tc.seed = seed;

            const fs::path dir = root / trial_dir_name(t);
            fs::create_directories(dir);
            std::ofstream metrics(dir / "metrics.jsonl");
            std::ofstream timing(dir / "timing.jsonl");
            if (!metrics || !timing) {
                throw ConfigError("cannot write metrics under " + dir.string());
            }
            out << "trial " << t << " seed " << seed << ": " << data.train.size() << " train / "
                << data.test.size() << " test, " << param_count << " parameters\n"
                << std::flush;

            const FitResult fit_result = fit(
                data.train, tc, config.circuit, &data.test,
                [&](const EpochMetrics &m, const ModelParams &) {
                    metrics << json{{"epoch", m.epoch},
                                    {"train_loss", m.train_loss},
                                    {"test_accuracy", nullable(m.test_accuracy)}}
                                   .dump()
                            << "\n"
                            << std::flush;
                    timing << json{{"epoch", m.epoch}, {"wall_time_s", m.wall_time_s}}.dump()
                           << "\n";
                    out << "  epoch " << m.epoch << "/" << tc.epochs << "  loss "
                        << m.train_loss << "  test_acc " << m.test_accuracy.value_or(NAN)
                        << "  (" << std::fixed << std::setprecision(1) << m.wall_time_s
                        << "s)\n"
                        << std::defaultfloat << std::setprecision(6) << std::flush;
                });

            const EpochMetrics &last = fit_result.metrics.back();
            const double final_acc = last.test_accuracy.value_or(NAN);
            metrics << json{{"final", true},
                            {"epochs", last.epoch},
                            {"train_loss", last.train_loss},
                            {"test_accuracy", final_acc},
                            {"param_count", param_count}}
                           .dump()
                    << "\n";

            Checkpoint ckpt;
            ckpt.config = config;
            ckpt.trial = t;
            ckpt.seed = seed;
            ckpt.params = fit_result.params;
            ckpt.scaling = data.scaling;
            ckpt.final_test_accuracy = final_acc;
            save_checkpoint(dir / "checkpoint.json", ckpt);

            finals.push_back(final_acc);
            trials.push_back({{"trial", t},
                              {"seed", seed},
                              {"final_train_loss", last.train_loss},
                              {"final_test_accuracy", final_acc},
                              {"dir", trial_dir_name(t)}});
        }
        const MeanStd stats = mean_std(finals);
        json summary{{"task", to_string(config.task)},
                     {"scheme", to_string(config.circuit.scheme.kind)},
                     {"k", config.circuit.scheme.k},
                     {"rotations", config.circuit.use_rotations},
                     {"param_count", param_count},
                     {"n_trials", config.trials},
                     {"test_accuracy_mean", stats.mean},
                     {"test_accuracy_std", stats.std},
                     {"trials", trials}};
        write_text(root / "summary.json", summary.dump(2) + "\n");
        out << "test accuracy " << stats.mean << " +/- " << stats.std << " over "
            << config.trials << " trial(s), " << param_count << " parameters\n";
        return kExitOk;
    });
}

int cmd_eval(const EvalOptions &options, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        if (options.split != "test" && options.split != "train") {
            throw ConfigError("split must be 'test' or 'train'");
        }
        Checkpoint ckpt = load_checkpoint(options.checkpoint);
        if (!options.data_root.empty()) {
            ckpt.config.data.root = options.data_root;
        }
        const PreparedData data = load_data(ckpt.config, ckpt.seed, &ckpt.scaling);
        const Dataset &set = options.split == "test" ? data.test : data.train;
        const AccuracyReport report =
            evaluate(ckpt.params, Circuit(ckpt.config.circuit), set);
        json j{{"split", options.split},
               {"n", set.size()},
               {"accuracy", report.accuracy},
               {"per_class", nan_as_null(report.per_class)},
               {"class_counts", report.class_counts}};
        out << j.dump() << "\n";
        return kExitOk;
    });
}

namespace {

struct ClassError {
    std::string name;
    std::size_t begin = 0;
    std::size_t end = 0;
    double max_rel = 0.0;
};

} // namespace

int cmd_gradcheck(const GradcheckOptions &options, std::ostream &out, std::ostream &err) {
    return guarded(err, [&]() -> int {
        const RunConfig config = resolve(options.config);
        if (options.samples < 1) {
            throw ConfigError("samples must be >= 1");
        }
        if (!(options.h > 0.0)) {
            throw ConfigError("h must be positive");
        }
        const Circuit circuit(config.circuit);
        const ModelParams params = initialize(config.circuit, config.train.init, config.seed);
        const ModelParams zeros = ModelParams::zeros(config.circuit);

        std::vector<ClassError> classes;
        std::size_t at = 0;
        const auto add = [&](const std::string &name, std::size_t count) {
            classes.push_back({name, at, at + count, 0.0});
            at += count;
        };
        add("theta", zeros.theta.size());
        std::size_t n_phi = 0;
        for (const auto &g : zeros.phi_groups) {
            n_phi += g.size();
        }
        add("phi", n_phi);
        add("head", zeros.head ? zeros.head->weights.size() + zeros.head->bias.size() : 0);

        const ThetaGradient method =
            options.shift ? ThetaGradient::parameter_shift : config.train.theta_gradient;
        const ShiftRule rule = options.shift.value_or(ShiftRule{});
        // Below this magnitude a component is compared absolutely (1e-7).
        const double floor = 1e-7 / options.tolerance;

        std::mt19937_64 rng(config.seed ^ 0x5851f42d4c957f2dULL);
        std::uniform_real_distribution<double> feature(-std::numbers::pi, std::numbers::pi);
        std::uniform_int_distribution<int> label(0, config.circuit.d_out - 1);
        for (int s = 0; s < options.samples; ++s) {
            std::vector<double> x(config.circuit.n_qubits);
            for (double &v : x) {
                v = feature(rng);
            }
            const Target target{label(rng)};
            const auto analytic =
                grad_model(circuit, x, target, params, config.train.loss, method, rule)
                    .grad.flat();
            const auto numeric = finite_difference_gradient(
                [&](std::span<const double> flat) {
                    const ModelParams p = unflatten(flat, config.circuit);
                    return loss_with_gradient(config.train.loss, circuit.evaluate(x, p).outputs,
                                              target)
                        .loss;
                },
                flatten(params), options.h);
            for (auto &c : classes) {
                for (std::size_t i = c.begin; i < c.end; ++i) {
                    const double rel =
                        std::abs(analytic[i] - numeric[i]) / std::max(std::abs(numeric[i]), floor);
                    c.max_rel = std::max(c.max_rel, rel);
                }
            }
        }

        bool pass = true;
        json report{{"samples", options.samples},
                    {"h", options.h},
                    {"tolerance", options.tolerance},
                    {"theta_method", to_string(method)}};
        for (const auto &c : classes) {
            const bool empty = c.begin == c.end;
            report["max_rel_error"][c.name] = empty ? json(nullptr) : json(c.max_rel);
            if (!empty && !(c.max_rel <= options.tolerance)) {
                pass = false;
            }
            out << c.name << ": ";
            if (empty) {
                out << "no parameters\n";
            } else {
                out << "max relative error " << c.max_rel << " over " << c.end - c.begin
                    << " parameters\n";
            }
        }
        report["pass"] = pass;
        out << report.dump() << "\n";
        return pass ? kExitOk : kExitCheckFailed;
    });
}

int cmd_spectrum(const SpectrumOptions &options, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        const Checkpoint ckpt = load_checkpoint(options.checkpoint);
        const Circuit circuit(ckpt.config.circuit);
        const auto n_groups = static_cast<int>(circuit.groups().size());
        if (options.group < 0 || options.group >= n_groups) {
            throw ConfigError("group " + std::to_string(options.group) + " outside [0, " +
                              std::to_string(n_groups) + ")");
        }
        const HermitianMatrix h = circuit.observables(ckpt.params)[options.group];
        const auto spectrum = eigen_spectrum(h);
        const auto [lo, hi] = rayleigh_bounds(h);
        constexpr double kTol = 1e-9;
        const bool within = lo >= -1.0 - kTol && hi <= 1.0 + kTol;
        const auto &qubits = circuit.groups()[options.group];
        if (options.json) {
            out << json{{"group", options.group},
                        {"qubits", qubits},
                        {"eigenvalues", spectrum},
                        {"rayleigh_bounds", {lo, hi}},
                        {"within_pauli_class", within}}
                       .dump()
                << "\n";
            return kExitOk;
        }
        const auto tuple = [](const auto &values) {
            std::ostringstream ss;
            ss << "(";
            for (std::size_t i = 0; i < values.size(); ++i) {
                ss << (i ? ", " : "") << values[i];
            }
            ss << ")";
            return ss.str();
        };
        out << "group " << options.group << " qubits " << tuple(qubits) << "\n"
            << "eigenvalues " << tuple(spectrum) << "\n"
            << "rayleigh bounds [" << lo << ", " << hi << "]\n"
            << tuple(spectrum) << ", within Pauli class: " << (within ? "true" : "false")
            << "\n";
        return kExitOk;
    });
}

int cmd_oracle(const OracleOptions &options, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        const bool closed = options.suite == "closedform" || options.suite == "all";
        const bool dense = options.suite == "densekron" || options.suite == "all";
        if (!closed && !dense) {
            throw ConfigError("unknown oracle suite '" + options.suite +
                              "' (closedform, densekron, all)");
        }
        constexpr double kTol = 1e-10;
        std::vector<oracle::SuiteReport> reports;
        if (closed) {
            reports.push_back(
                oracle::closed_form_suite(options.cases ? options.cases : 1000, options.seed));
        }
        if (dense) {
            reports.push_back(
                oracle::dense_kron_suite(options.cases ? options.cases : 200, options.seed));
        }
        bool pass = true;
        for (const auto &r : reports) {
            const bool ok = r.max_deviation <= kTol;
            pass = pass && ok;
            out << r.suite << ": " << r.cases << " comparisons, max deviation " << r.max_deviation
                << (ok ? " (pass)" : " (FAIL)") << "\n";
        }
        return pass ? kExitOk : kExitCheckFailed;
    });
}

namespace {

struct TableRow {
    std::string task;
    std::string label;
    CircuitConfig config;
};

std::vector<TableRow> reference_configs() {
    std::vector<TableRow> rows;
    const auto banknote = [](SchemeKind kind, int k, bool rotations) {
        CircuitConfig c;
        c.n_qubits = 4;
        c.n_layers = 4;
        c.d_out = 2;
        c.use_rotations = rotations;
        c.scheme.kind = kind;
        c.scheme.k = k;
        return c;
    };
    for (bool rot : {true, false}) {
        const std::string suffix = rot ? " w/ rotations" : " w/o rotations";
        if (rot) {
            rows.push_back(
                {"banknote", "Pauli" + suffix, banknote(SchemeKind::fixed_pauli_z, 1, rot)});
        }
        for (int k = 1; k <= 3; ++k) {
            rows.push_back({"banknote", std::to_string(k) + "-local" + suffix,
                            banknote(SchemeKind::sliding_k_local, k, rot)});
        }
    }
    for (int k = 1; k <= 5; ++k) {
        CircuitConfig c;
        c.n_qubits = 16;
        c.d_out = 10;
        c.scheme.k = k;
        rows.push_back({"mnist", std::to_string(k) + "-local sliding", c});
    }
    for (int s : {6, 8, 16}) {
        CircuitConfig c;
        c.n_qubits = 16;
        c.d_out = 10;
        c.use_rotations = false;
        c.scheme.kind = SchemeKind::pairwise_combinatorial;
        for (int q = 1; q <= s; ++q) {
            c.scheme.subset.push_back(q);
        }
        rows.push_back({"mnist", "pairwise " + std::to_string(s) + " qubits", c});
    }
    return rows;
}

} // namespace

int cmd_paramcount(const ParamcountOptions &options, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        if (options.tables) {
            for (const auto &row : reference_configs()) {
                out << std::left << std::setw(10) << row.task << std::setw(26) << row.label
                    << count_parameters(row.config) << "\n";
            }
            return kExitOk;
        }
        const RunConfig config = resolve(options.config);
        const CircuitConfig &c = config.circuit;
        const ModelParams zeros = ModelParams::zeros(c);
        std::size_t observables = 0;
        for (const auto &g : zeros.phi_groups) {
            observables += g.size();
        }
        const std::size_t head =
            zeros.head ? zeros.head->weights.size() + zeros.head->bias.size() : 0;
        out << json{{"param_count", count_parameters(c)},
                    {"rotations", zeros.theta.size()},
                    {"observables", observables},
                    {"head", head}}
                   .dump()
            << "\n";
        return kExitOk;
    });
}

} // namespace ano
