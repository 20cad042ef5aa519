// Copyright 2026 The divsum Authors.
// SPDX-License-Identifier: Apache-2.0

#include "divsum/harness/config.hpp"

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "divsum/error.hpp"

namespace divsum::harness {

namespace {

namespace pt = boost::property_tree;

[[noreturn]] void bad(const std::string& key, const std::string& value) {
  throw Error(ErrorCode::ConfigError, "bad value for " + key + ": '" + value + "'");
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::string joined(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : " ") + s;
  return out;
}

template <class T>
T number(const std::string& key, std::string_view text) {
  T v{};
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || end != text.data() + text.size()) bad(key, std::string(text));
  return v;
}

bool boolean(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  bad(key, text);
}

std::string formatDouble(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

CurveFixture parseFixture(const std::string& key, const std::string& text) {
  std::uint64_t parts[5];
  std::size_t from = 0;
  for (int i = 0; i < 5; ++i) {
    const std::size_t colon = text.find(':', from);
    if ((i < 4) != (colon != std::string::npos)) bad(key, text);
    parts[i] = number<std::uint64_t>(key, std::string_view(text).substr(from, colon - from));
    from = colon + 1;
  }
  return {parts[0], parts[1], parts[2], parts[3], parts[4]};
}

std::pair<double, double> parseInterval(const std::string& key, const std::string& text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos) bad(key, text);
  return {number<double>(key, std::string_view(text).substr(0, colon)),
          number<double>(key, std::string_view(text).substr(colon + 1))};
}

// One binding per key: how to read it and how to write it back.
struct Field {
  std::function<void(ExperimentConfig&, const std::string& key, const std::string&)> read;
  std::function<std::string(const ExperimentConfig&)> write;
};

template <class T>
Field scalar(T ExperimentConfig::*member) {
  return {[member](ExperimentConfig& c, const std::string& key, const std::string& v) {
            if constexpr (std::is_same_v<T, bool>) {
              c.*member = boolean(key, v);
            } else if constexpr (std::is_same_v<T, std::string>) {
              c.*member = v;
            } else {
              c.*member = number<T>(key, v);
            }
          },
          [member](const ExperimentConfig& c) -> std::string {
            if constexpr (std::is_same_v<T, bool>) {
              return c.*member ? "true" : "false";
            } else if constexpr (std::is_same_v<T, std::string>) {
              return c.*member;
            } else if constexpr (std::is_floating_point_v<T>) {
              return formatDouble(c.*member);
            } else {
              return std::to_string(c.*member);
            }
          }};
}

template <class T>
Field list(std::vector<T> ExperimentConfig::*member) {
  return {[member](ExperimentConfig& c, const std::string& key, const std::string& v) {
            (c.*member).clear();
            for (const auto& w : words(v)) {
              if constexpr (std::is_same_v<T, std::string>) {
                (c.*member).push_back(w);
              } else {
                (c.*member).push_back(number<T>(key, w));
              }
            }
          },
          [member](const ExperimentConfig& c) {
            std::vector<std::string> items;
            for (const auto& x : c.*member) {
              if constexpr (std::is_same_v<T, std::string>) {
                items.push_back(x);
              } else if constexpr (std::is_floating_point_v<T>) {
                items.push_back(formatDouble(x));
              } else {
                items.push_back(std::to_string(x));
              }
            }
            return joined(items);
          }};
}

using Section = std::vector<std::pair<std::string, Field>>;

const std::vector<std::pair<std::string, Section>>& schema() {
  static const std::vector<std::pair<std::string, Section>> s = [] {
    using C = ExperimentConfig;
    Field curves{[](C& c, const std::string& key, const std::string& v) {
                   c.curves.clear();
                   for (const auto& w : words(v)) c.curves.push_back(parseFixture(key, w));
                 },
                 [](const C& c) {
                   std::vector<std::string> items;
                   for (const auto& f : c.curves) {
                     items.push_back(std::to_string(f.p) + ":" + std::to_string(f.a) + ":" + std::to_string(f.b) +
                                     ":" + std::to_string(f.px) + ":" + std::to_string(f.py));
                   }
                   return joined(items);
                 }};
    Field intervals{[](C& c, const std::string& key, const std::string& v) {
                      c.intervals.clear();
                      for (const auto& w : words(v)) c.intervals.push_back(parseInterval(key, w));
                    },
                    [](const C& c) {
                      std::vector<std::string> items;
                      for (const auto& [x, y] : c.intervals) items.push_back(formatDouble(x) + ":" + formatDouble(y));
                      return joined(items);
                    }};
    return std::vector<std::pair<std::string, Section>>{
        {"ensemble",
         {{"curves", curves},
          {"primes", list(&C::primes)},
          {"primeMin", scalar(&C::primeMin)},
          {"primeMax", scalar(&C::primeMax)},
          {"curveCount", scalar(&C::curveCount)},
          {"pointsPerCurve", scalar(&C::pointsPerCurve)},
          {"orderExponent", scalar(&C::orderExponent)},
          {"requireLargeOrder", scalar(&C::requireLargeOrder)},
          {"requireLargePrimeFactor", scalar(&C::requireLargePrimeFactor)},
          {"seed", scalar(&C::seed)}}},
        {"characters", {{"characters", list(&C::characters)}}},
        {"twists", {{"twists", list(&C::twists)}}},
        {"schedule",
         {{"nValues", list(&C::nValues)},
          {"nFractions", list(&C::nFractions)},
          {"overrideRange", scalar(&C::overrideRange)}}},
        {"audit",
         {{"intervals", intervals},
          {"smoothY", scalar(&C::smoothY)},
          {"l0", scalar(&C::l0)},
          {"theorems", list(&C::theorems)},
          {"workers", scalar(&C::workers)},
          {"output", scalar(&C::output)},
          {"format", scalar(&C::format)},
          {"costCeiling", scalar(&C::costCeiling)},
          {"edsTriples", scalar(&C::edsTriples)},
          {"transportPairs", scalar(&C::transportPairs)},
          {"periodSamples", scalar(&C::periodSamples)},
          {"engineLimit", scalar(&C::engineLimit)},
          {"multLimit", scalar(&C::multLimit)},
          {"decompositionLimit", scalar(&C::decompositionLimit)},
          {"weilSpecs", scalar(&C::weilSpecs)},
          {"weilMaxR", scalar(&C::weilMaxR)}}},
    };
  }();
  return s;
}

}  // namespace

ExperimentConfig parseConfig(std::string_view text) {
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorCode::ConfigError, e.message() + " at line " + std::to_string(e.line()));
  }
  ExperimentConfig config;
  for (const auto& [sectionName, section] : tree) {
    const auto& sections = schema();
    auto sit = std::find_if(sections.begin(), sections.end(), [&](const auto& s) { return s.first == sectionName; });
    if (sit == sections.end() || !section.data().empty()) {
      throw Error(ErrorCode::ConfigError, "unknown section [" + sectionName + "]");
    }
    for (const auto& [key, value] : section) {
      auto fit = std::find_if(sit->second.begin(), sit->second.end(), [&](const auto& f) { return f.first == key; });
      if (fit == sit->second.end()) throw Error(ErrorCode::ConfigError, "unknown key " + sectionName + "." + key);
      fit->second.read(config, key, value.data());
    }
  }
  if (config.format != "csv" && config.format != "json") bad("format", config.format);
  return config;
}

ExperimentConfig loadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parseConfig(text.str());
}

std::string emitConfig(const ExperimentConfig& config) {
  pt::ptree tree;
  for (const auto& [sectionName, fields] : schema()) {
    pt::ptree section;
    for (const auto& [key, field] : fields) section.put(pt::ptree::path_type(key, '\0'), field.write(config));
    tree.add_child(pt::ptree::path_type(sectionName, '\0'), section);
  }
  std::ostringstream out;
  pt::write_ini(out, tree);
  return out.str();
}

std::string configHash(const ExperimentConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : emitConfig(config)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace divsum::harness
