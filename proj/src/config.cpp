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

#include "ano/config.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "ano/errors.hpp"

namespace ano {

using nlohmann::json;

std::string to_string(Task task) { return task == Task::banknote ? "banknote" : "mnist"; }

Task parse_task(const std::string &s) {
    if (s == "banknote") {
        return Task::banknote;
    }
    if (s == "mnist") {
        return Task::mnist;
    }
    throw ConfigError("unknown task '" + s + "' (banknote or mnist)");
}

RunConfig default_config(Task task) {
    RunConfig c;
    c.task = task;
    if (task == Task::banknote) {
        c.out = "runs/banknote";
        c.circuit.n_qubits = 4;
        c.circuit.d_out = 2;
        c.train.epochs = 100;
        c.data.scaling = ScalingKind::zscore;
    } else {
        c.out = "runs/mnist";
        c.circuit.n_qubits = 16;
        c.circuit.d_out = 10;
        c.train.epochs = 30;
        c.data.scaling = ScalingKind::angle_pi;
    }
    c.circuit.n_layers = 4;
    c.circuit.scheme.kind = SchemeKind::sliding_k_local;
    c.circuit.scheme.k = 2;
    return c;
}

namespace {

// YAML -> JSON tree, every scalar kept as its source text ("y" stays "y").
// Fields are typed when read.
json to_tree(const YAML::Node &node, const std::string &where) {
    switch (node.Type()) {
    case YAML::NodeType::Undefined:
    case YAML::NodeType::Null:
        return nullptr;
    case YAML::NodeType::Scalar:
        return node.Scalar();
    case YAML::NodeType::Sequence: {
        json arr = json::array();
        for (const auto &item : node) {
            arr.push_back(to_tree(item, where));
        }
        return arr;
    }
    case YAML::NodeType::Map: {
        json obj = json::object();
        for (const auto &kv : node) {
            obj[kv.first.as<std::string>()] = to_tree(kv.second, where);
        }
        return obj;
    }
    }
    throw ConfigError(where + ": unsupported YAML node");
}

json load_tree(const std::string &text, const std::string &where) {
    YAML::Node node;
    try {
        node = YAML::Load(text);
    } catch (const YAML::Exception &e) {
        throw ConfigError(where + ": " + e.what());
    }
    json tree = to_tree(node, where);
    if (tree.is_null()) {
        return json::object();
    }
    return tree;
}

void apply_override(json &root, const std::string &item) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ConfigError("override '" + item + "' is not of the form key.path=value");
    }
    const std::string path = item.substr(0, eq);
    json value = load_tree(item.substr(eq + 1), "override " + path);
    if (value.is_object() && value.empty() && eq + 1 == item.size()) {
        value = "";
    }
    json *node = &root;
    std::stringstream ss(path);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(ss, part, '.')) {
        if (part.empty()) {
            throw ConfigError("override '" + item + "' has an empty path component");
        }
        parts.push_back(part);
    }
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        json &child = (*node)[parts[i]];
        if (child.is_null()) {
            child = json::object();
        }
        if (!child.is_object()) {
            throw ConfigError("override '" + item + "': '" + parts[i] + "' is not a section");
        }
        node = &child;
    }
    (*node)[parts.back()] = std::move(value);
}

class Section {
  public:
    Section(const json &node, std::string path) : node_(node), path_(std::move(path)) {
        if (!node_.is_object()) {
            throw ConfigError(label("") + " must be a mapping");
        }
    }

    ~Section() = default;
    Section(const Section &) = delete;
    Section &operator=(const Section &) = delete;

    [[nodiscard]] bool has(const std::string &key) const {
        return node_.contains(key) && !node_.at(key).is_null();
    }

    [[nodiscard]] Section section(const std::string &key) {
        seen_.insert(key);
        static const json empty = json::object();
        return {has(key) ? node_.at(key) : empty, label(key)};
    }

    void read(const std::string &key, std::string &out) {
        if (const json *v = scalar(key)) {
            out = v->get<std::string>();
        }
    }

    void read(const std::string &key, int &out) {
        if (const json *v = scalar(key)) {
            out = parse_number<int>(key, v->get<std::string>());
        }
    }

    void read(const std::string &key, std::uint64_t &out) {
        if (const json *v = scalar(key)) {
            out = parse_number<std::uint64_t>(key, v->get<std::string>());
        }
    }

    void read(const std::string &key, double &out) {
        if (const json *v = scalar(key)) {
            out = parse_number<double>(key, v->get<std::string>());
        }
    }

    void read(const std::string &key, bool &out) {
        if (const json *v = scalar(key)) {
            const std::string s = v->get<std::string>();
            if (s == "true" || s == "yes" || s == "on" || s == "1") {
                out = true;
            } else if (s == "false" || s == "no" || s == "off" || s == "0") {
                out = false;
            } else {
                throw ConfigError(label(key) + ": expected a boolean, got '" + s + "'");
            }
        }
    }

    void read(const std::string &key, std::vector<int> &out) {
        seen_.insert(key);
        if (!has(key)) {
            return;
        }
        const json &v = node_.at(key);
        if (!v.is_array()) {
            throw ConfigError(label(key) + ": expected a list of integers");
        }
        out.clear();
        for (const auto &item : v) {
            if (!item.is_string()) {
                throw ConfigError(label(key) + ": expected a list of integers");
            }
            out.push_back(parse_number<int>(key, item.get<std::string>()));
        }
    }

    template <class Enum, class Parse>
    void read_enum(const std::string &key, Enum &out, Parse parse) {
        if (const json *v = scalar(key)) {
            try {
                out = parse(v->get<std::string>());
            } catch (const ConfigError &e) {
                throw ConfigError(label(key) + ": " + e.what());
            }
        }
    }

    /// Throws on keys that were never read.
    void finish() const {
        for (const auto &item : node_.items()) {
            if (!seen_.contains(item.key())) {
                throw ConfigError("unknown config key '" + label(item.key()) + "'");
            }
        }
    }

  private:
    [[nodiscard]] std::string label(const std::string &key) const {
        if (key.empty()) {
            return path_.empty() ? "config" : path_;
        }
        return path_.empty() ? key : path_ + "." + key;
    }

    const json *scalar(const std::string &key) {
        seen_.insert(key);
        if (!has(key)) {
            return nullptr;
        }
        const json &v = node_.at(key);
        if (!v.is_string()) {
            throw ConfigError(label(key) + ": expected a single value");
        }
        return &v;
    }

    template <class T> T parse_number(const std::string &key, const std::string &s) const {
        T value{};
        const char *end = s.data() + s.size();
        auto [ptr, ec] = std::from_chars(s.data(), end, value);
        if (ec != std::errc{} || ptr != end) {
            throw ConfigError(label(key) + ": expected a number, got '" + s + "'");
        }
        return value;
    }

    const json &node_;
    std::string path_;
    std::set<std::string> seen_;
};

RunConfig from_tree(const json &tree) {
    Section root(tree, "");
    Task task = Task::banknote;
    root.read_enum("task", task, parse_task);
    RunConfig c = default_config(task);

    root.read("seed", c.seed);
    root.read("trials", c.trials);
    root.read("out", c.out);

    {
        Section d = root.section("data");
        d.read("root", c.data.root);
        d.read("banknote_csv", c.data.banknote_csv);
        d.read("mnist_images", c.data.mnist_images);
        d.read("mnist_labels", c.data.mnist_labels);
        d.read("mnist_subset", c.data.mnist_subset);
        d.read("test_fraction", c.data.test_fraction);
        d.read("train_limit", c.data.train_limit);
        d.read("test_limit", c.data.test_limit);
        d.read_enum("scaling", c.data.scaling, parse_scaling_kind);
        d.finish();
    }
    {
        Section s = root.section("circuit");
        s.read("n_qubits", c.circuit.n_qubits);
        s.read("n_layers", c.circuit.n_layers);
        s.read("rotations", c.circuit.use_rotations);
        s.read("entangling", c.circuit.entangling);
        s.read_enum("encoding_axis", c.circuit.encoding_axis, parse_axis);
        s.read("d_out", c.circuit.d_out);
        s.read_enum("scheme", c.circuit.scheme.kind, parse_scheme_kind);
        s.read("k", c.circuit.scheme.k);
        s.read("subset", c.circuit.scheme.subset);
        s.read_enum("head", c.circuit.scheme.head, parse_head_kind);
        s.finish();
    }
    {
        Section t = root.section("train");
        t.read("epochs", c.train.epochs);
        t.read("batch_size", c.train.batch_size);
        t.read("learning_rate", c.train.learning_rate);
        t.read_enum("optimizer", c.train.optimizer, parse_optimizer_kind);
        t.read("beta1", c.train.beta1);
        t.read("beta2", c.train.beta2);
        t.read("epsilon", c.train.epsilon);
        t.read_enum("loss", c.train.loss, parse_loss_kind);
        t.read_enum("theta_gradient", c.train.theta_gradient, parse_theta_gradient);
        {
            Section i = t.section("init");
            i.read("theta_range", c.train.init.theta_range);
            i.read_enum("phi", c.train.init.phi, parse_phi_init);
            i.read("phi_std", c.train.init.phi_std);
            i.read("head_std", c.train.init.head_std);
            i.finish();
        }
        t.finish();
    }
    root.finish();
    validate(c);
    return c;
}

std::string shortest(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return {buf, ptr};
}

} // namespace

RunConfig parse_config(const std::string &yaml_text, const std::vector<std::string> &overrides) {
    json tree = load_tree(yaml_text, "config");
    if (!tree.is_object()) {
        throw ConfigError("config must be a mapping at the top level");
    }
    for (const auto &o : overrides) {
        apply_override(tree, o);
    }
    return from_tree(tree);
}

RunConfig load_config(const std::filesystem::path &path, const std::vector<std::string> &overrides) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), overrides);
}

std::string to_yaml(const RunConfig &c) {
    YAML::Emitter e;
    const auto kv = [&e](const char *key, const std::string &value) {
        e << YAML::Key << key << YAML::Value << value;
    };
    const auto num = [&kv](const char *key, double value) { kv(key, shortest(value)); };
    const auto integer = [&kv](const char *key, long long value) {
        kv(key, std::to_string(value));
    };
    const auto flag = [&kv](const char *key, bool value) { kv(key, value ? "true" : "false"); };

    e << YAML::BeginMap;
    kv("task", to_string(c.task));
    kv("seed", std::to_string(c.seed));
    integer("trials", c.trials);
    kv("out", c.out);

    e << YAML::Key << "data" << YAML::Value << YAML::BeginMap;
    kv("root", c.data.root);
    kv("banknote_csv", c.data.banknote_csv);
    kv("mnist_images", c.data.mnist_images);
    kv("mnist_labels", c.data.mnist_labels);
    integer("mnist_subset", c.data.mnist_subset);
    num("test_fraction", c.data.test_fraction);
    integer("train_limit", c.data.train_limit);
    integer("test_limit", c.data.test_limit);
    kv("scaling", to_string(c.data.scaling));
    e << YAML::EndMap;

    e << YAML::Key << "circuit" << YAML::Value << YAML::BeginMap;
    integer("n_qubits", c.circuit.n_qubits);
    integer("n_layers", c.circuit.n_layers);
    flag("rotations", c.circuit.use_rotations);
    flag("entangling", c.circuit.entangling);
    kv("encoding_axis", to_string(c.circuit.encoding_axis));
    integer("d_out", c.circuit.d_out);
    kv("scheme", to_string(c.circuit.scheme.kind));
    integer("k", c.circuit.scheme.k);
    e << YAML::Key << "subset" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (int q : c.circuit.scheme.subset) {
        e << std::to_string(q);
    }
    e << YAML::EndSeq;
    kv("head", to_string(c.circuit.scheme.head));
    e << YAML::EndMap;

    e << YAML::Key << "train" << YAML::Value << YAML::BeginMap;
    integer("epochs", c.train.epochs);
    integer("batch_size", c.train.batch_size);
    num("learning_rate", c.train.learning_rate);
    kv("optimizer", to_string(c.train.optimizer));
    num("beta1", c.train.beta1);
    num("beta2", c.train.beta2);
    num("epsilon", c.train.epsilon);
    kv("loss", to_string(c.train.loss));
    kv("theta_gradient", to_string(c.train.theta_gradient));
    e << YAML::Key << "init" << YAML::Value << YAML::BeginMap;
    num("theta_range", c.train.init.theta_range);
    kv("phi", to_string(c.train.init.phi));
    num("phi_std", c.train.init.phi_std);
    num("head_std", c.train.init.head_std);
    e << YAML::EndMap;
    e << YAML::EndMap;

    e << YAML::EndMap;
    return std::string(e.c_str()) + "\n";
}

void validate(const RunConfig &c) {
    if (c.trials < 1) {
        throw ConfigError("trials must be >= 1");
    }
    if (!(c.data.test_fraction > 0.0 && c.data.test_fraction < 1.0)) {
        throw ConfigError("data.test_fraction must lie strictly between 0 and 1");
    }
    if (c.data.train_limit < 0 || c.data.test_limit < 0) {
        throw ConfigError("data.train_limit and data.test_limit must be >= 0");
    }
    if (c.data.mnist_subset < 2) {
        throw ConfigError("data.mnist_subset must be >= 2");
    }
    if (c.out.empty()) {
        throw ConfigError("out must name a directory");
    }
    validate(c.circuit);
    validate(c.train);
    const int features = c.task == Task::banknote ? 4 : 16;
    const int classes = c.task == Task::banknote ? 2 : 10;
    if (c.circuit.n_qubits != features) {
        throw ConfigError(to_string(c.task) + " has " + std::to_string(features) +
                          " features; circuit.n_qubits is " + std::to_string(c.circuit.n_qubits));
    }
    if (c.circuit.d_out < classes) {
        throw ConfigError(to_string(c.task) + " has " + std::to_string(classes) +
                          " classes; circuit.d_out is " + std::to_string(c.circuit.d_out));
    }
}

std::filesystem::path resolve_data_path(const DataConfig &data, const std::string &relative) {
    std::filesystem::path p(relative);
    if (p.is_absolute()) {
        return p;
    }
    std::filesystem::path root(data.root);
    if (root.empty()) {
        const char *env = std::getenv("ANO_DATA_DIR");
        root = (env != nullptr && *env != '\0') ? std::filesystem::path(env)
                                                : std::filesystem::path("data");
    }
    return root / p;
}

PreparedData prepare_data(const RunConfig &config, std::uint64_t split_seed,
                          const FeatureScaling *scaling) {
    Dataset full;
    if (config.task == Task::banknote) {
        full = load_banknote_csv(resolve_data_path(config.data, config.data.banknote_csv));
    } else {
        const Dataset images =
            load_mnist_idx(resolve_data_path(config.data, config.data.mnist_images),
                           resolve_data_path(config.data, config.data.mnist_labels));
        full = resize_images(images.prefix(static_cast<std::size_t>(config.data.mnist_subset)));
    }
    auto [train, test] = split(full, config.data.test_fraction, split_seed);
    if (config.data.train_limit > 0) {
        train = train.prefix(static_cast<std::size_t>(config.data.train_limit));
    }
    if (config.data.test_limit > 0) {
        test = test.prefix(static_cast<std::size_t>(config.data.test_limit));
    }
    PreparedData out;
    out.scaling = scaling != nullptr ? *scaling : fit_scaling(train, config.data.scaling);
    out.train = standardize(train, out.scaling);
    out.test = standardize(test, out.scaling);
    return out;
}

std::uint64_t trial_seed(const RunConfig &config, int trial) {
    return config.seed + static_cast<std::uint64_t>(trial);
}

} // namespace ano
