#pragma once

// CLI11 configuration in JSON. Top-level keys set options of the main app;
// nested objects address subcommands, e.g. {"seed": 3, "gen": {"n": 100}}.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

namespace msmd::cli {

using nlohmann::json;

// Best-effort typing of a CLI11 value string.
inline json typed_value(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  const char* end = s.data() + s.size();
  std::int64_t i = 0;
  if (auto [p, ec] = std::from_chars(s.data(), end, i); ec == std::errc{} && p == end && !s.empty()) return i;
  std::uint64_t u = 0;
  if (auto [p, ec] = std::from_chars(s.data(), end, u); ec == std::errc{} && p == end && !s.empty()) return u;
  if (!s.empty()) {
    char* stop = nullptr;
    const double d = std::strtod(s.c_str(), &stop);
    if (stop == s.c_str() + s.size() && std::isfinite(d)) return d;
  }
  return s;
}

class JsonConfig : public CLI::Config {
 public:
  // Options that never belong in a recorded configuration: they do not
  // influence the content of any output.
  static const std::set<std::string>& unrecorded() {
    static const std::set<std::string> names{"help", "config", "threads", "out"};
    return names;
  }

  std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
    return resolved(app, default_also).dump(2) + "\n";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& is) const override {
    json j;
    try {
      is >> j;
    } catch (const json::exception& e) {
      throw CLI::ConfigError(std::string("configuration is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConfigError("configuration must be a JSON object");
    std::vector<CLI::ConfigItem> items;
    flatten(j, {}, items);
    return items;
  }

 private:
  static std::string scalar(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
  }

  static void flatten(const json& j, const std::vector<std::string>& parents, std::vector<CLI::ConfigItem>& out) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it->is_object()) {
        auto p = parents;
        p.push_back(it.key());
        flatten(*it, p, out);
        continue;
      }
      if (it->is_null()) continue;
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = it.key();
      if (it->is_array()) {
        for (const auto& e : *it) item.inputs.push_back(scalar(e));
      } else {
        item.inputs.push_back(scalar(*it));
      }
      out.push_back(std::move(item));
    }
  }

  static json resolved(const CLI::App* app, bool default_also) {
    json out = json::object();
    for (const CLI::Option* opt : app->get_options()) {
      if (!opt->get_configurable()) continue;
      const std::string name = opt->get_single_name();
      if (name.empty() || unrecorded().count(name)) continue;
      if (opt->get_type_size() == 0) {
        out[name] = opt->count() > 0 && opt->as<bool>();
        continue;
      }
      std::vector<std::string> values;
      if (opt->count() > 0) {
        values = opt->results();
      } else if (default_also) {
        std::string d = opt->get_default_str();
        if (d.empty()) continue;
        if (d.size() >= 2 && d.front() == '[' && d.back() == ']') {
          d = d.substr(1, d.size() - 2);
          values = CLI::detail::split(d, ',');
        } else {
          values.push_back(d);
        }
      } else {
        continue;
      }
      if (opt->get_expected_max() > 1) {
        json arr = json::array();
        for (const auto& v : values) arr.push_back(typed_value(v));
        out[name] = arr;
      } else if (!values.empty()) {
        out[name] = typed_value(values.back());
      }
    }
    for (const CLI::App* sub : app->get_subcommands()) out[sub->get_name()] = resolved(sub, default_also);
    return out;
  }
};

}  // namespace msmd::cli
