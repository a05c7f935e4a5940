/*
    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
*/

#include "secest/config.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "secest/error.hpp"

namespace secest {

namespace {

class ConfigReader {
  public:
    ConfigReader(YAML::Node root, std::string source) : root_(std::move(root)), source_(std::move(source)) {}

    [[noreturn]] void fail(const YAML::Mark& mark, const std::string& message) const {
        std::ostringstream out;
        out << source_;
        if (!mark.is_null()) {
            out << ':' << (mark.line + 1);
        }
        out << ": " << message;
        throw ConfigError(out.str());
    }

    YAML::Node section(const std::string& name, std::set<std::string> allowed, bool required) {
        const YAML::Node node = root_[name];
        if (!node) {
            if (required) {
                fail(root_.Mark(), "missing required section '" + name + "'");
            }
            return YAML::Node(YAML::NodeType::Map);
        }
        if (!node.IsMap()) {
            fail(node.Mark(), "section '" + name + "' must be a mapping");
        }
        for (const auto& entry : node) {
            const auto key = entry.first.as<std::string>();
            if (!allowed.contains(key)) {
                fail(entry.first.Mark(), "unknown key '" + name + "." + key + "'");
            }
            marks_[name + "." + key] = entry.first.Mark();
        }
        return node;
    }

    template <typename T>
    std::optional<T> get(const YAML::Node& section, const std::string& section_name, const std::string& key) {
        const YAML::Node node = section[key];
        if (!node) {
            return std::nullopt;
        }
        if (!node.IsScalar()) {
            fail(node.Mark(), "'" + section_name + "." + key + "' must be a scalar");
        }
        try {
            return node.as<T>();
        } catch (const YAML::Exception&) {
            fail(node.Mark(), "'" + section_name + "." + key + "' has invalid value '" + node.Scalar() + "'");
        }
    }

    template <typename T>
    T require(const YAML::Node& section, const std::string& section_name, const std::string& key) {
        auto value = get<T>(section, section_name, key);
        if (!value) {
            fail(section.Mark(), "missing required key '" + section_name + "." + key + "'");
        }
        return *value;
    }

    // Parameter errors name the offending dotted key first; point at its line.
    [[noreturn]] void fail_parameter(const ParameterError& error, const YAML::Mark& fallback) const {
        const std::string message = error.what();
        const std::string key = message.substr(0, message.find(' '));
        const auto it = marks_.find(key);
        fail(it != marks_.end() ? it->second : fallback, message);
    }

    const YAML::Node& root() const { return root_; }

  private:
    YAML::Node root_;
    std::string source_;
    std::map<std::string, YAML::Mark> marks_;
};

}// namespace

SimConfig parse_config(std::string_view text, const std::string& source_name) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::ParserException& e) {
        throw ConfigError(source_name + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
    }
    ConfigReader reader(root, source_name);
    if (!root.IsMap()) {
        reader.fail(root.Mark(), "top level must be a mapping with sections system, channels, encoding, simulation");
    }
    for (const auto& entry : root) {
        const auto key = entry.first.as<std::string>();
        if (key != "system" && key != "channels" && key != "encoding" && key != "simulation") {
            reader.fail(entry.first.Mark(), "unknown section '" + key + "'");
        }
    }

    const YAML::Node system = reader.section("system", {"a", "q", "r", "sigma0"}, true);
    const YAML::Node channels = reader.section("channels", {"gamma_user", "gamma_eaves"}, true);
    const YAML::Node encoding = reader.section("encoding", {"mu", "seed", "common_indicator"}, false);
    const YAML::Node simulation = reader.section("simulation", {"horizon", "burn_in", "trials", "master_seed"}, false);

    const auto a = reader.require<double>(system, "system", "a");
    const auto q = reader.require<double>(system, "system", "q");
    const auto r = reader.require<double>(system, "system", "r");
    const auto sigma0 = reader.get<double>(system, "system", "sigma0");
    const auto gamma_user = reader.require<double>(channels, "channels", "gamma_user");
    const auto gamma_eaves = reader.require<double>(channels, "channels", "gamma_eaves");
    const auto mu = reader.get<double>(encoding, "encoding", "mu").value_or(0.0);
    const auto seed = reader.get<std::uint64_t>(encoding, "encoding", "seed").value_or(0);
    const auto common = reader.get<bool>(encoding, "encoding", "common_indicator").value_or(false);

    try {
        SimConfig config{SystemParams(a, q, r, sigma0), ChannelParams(gamma_user, gamma_eaves),
                         EncodingPolicy(mu, seed)};
        config.common_indicator = common;
        config.horizon = reader.get<std::int64_t>(simulation, "simulation", "horizon").value_or(config.horizon);
        config.burn_in = reader.get<std::int64_t>(simulation, "simulation", "burn_in").value_or(config.burn_in);
        config.trials = reader.get<std::int64_t>(simulation, "simulation", "trials").value_or(config.trials);
        config.master_seed =
            reader.get<std::uint64_t>(simulation, "simulation", "master_seed").value_or(config.master_seed);
        config.validate();
        return config;
    } catch (const ParameterError& e) {
        reader.fail_parameter(e, root.Mark());
    }
}

SimConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(path + ": cannot open configuration file");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), path);
}

nlohmann::ordered_json config_to_json(const SimConfig& config) {
    nlohmann::ordered_json j;
    j["system"] = {{"a", config.system.a()},
                   {"q", config.system.q()},
                   {"r", config.system.r()},
                   {"sigma0", config.system.sigma0()}};
    j["channels"] = {{"gamma_user", config.channels.gamma_user()}, {"gamma_eaves", config.channels.gamma_eaves()}};
    j["encoding"] = {{"mu", config.policy.mu()},
                     {"seed", config.policy.seed()},
                     {"common_indicator", config.common_indicator}};
    j["simulation"] = {{"horizon", config.horizon},
                       {"burn_in", config.burn_in},
                       {"trials", config.trials},
                       {"master_seed", config.master_seed}};
    return j;
}

}// namespace secest
