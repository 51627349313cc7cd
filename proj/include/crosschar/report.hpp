#pragma once

// Structured check records and their JSON / CSV serializations.
//
// JSON: an array with one record per line. Two record kinds:
//   {"experiment", "p", "m", "r", "k", "params", "lhs", "rhs", "verdict"}
//   {"probe", "q", "r", "theta_exponent", "seed", "assertions", "observations"}
// CSV columns (one row per chars record, one row per probe assertion):
//   kind,name,p_or_q,m,r,k,theta_exponent,seed,check,expected,got,pass
// Chars rows put params in `check`, rhs in `expected`, lhs in `got`; `pass` is
// true, false or observed.

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace crosschar {

using json = nlohmann::ordered_json;

struct CharsRecord {
  std::string experiment;
  std::uint64_t p = 0, m = 0, r = 0, k = 0;
  json params = json::object();
  std::string lhs, rhs;
  bool pass = false;
  bool observational = false;  // recorded, never asserted

  const char* verdict() const { return observational ? "OBSERVED" : pass ? "PASS" : "FAIL"; }
  json to_json() const {
    return json{{"experiment", experiment}, {"p", p}, {"m", m}, {"r", r}, {"k", k}, {"params", params},
                {"lhs", lhs}, {"rhs", rhs}, {"verdict", verdict()}};
  }
};

struct Assertion {
  std::string name;
  json expected, got;
  bool pass = false;
};

struct ProbeReport {
  std::string probe;
  std::uint64_t q = 0, r = 0;
  std::optional<std::uint64_t> theta_exponent;
  std::uint64_t seed = 0;
  std::vector<Assertion> assertions;
  json observations = json::array();

  /// Records expected == got.
  bool expect(const std::string& name, const json& expected, const json& got) {
    const bool ok = expected == got;
    assertions.push_back({name, expected, got, ok});
    return ok;
  }
  bool check(const std::string& name, bool ok) { return expect(name, true, ok); }
  void observe(const std::string& name, const json& value) { observations.push_back(json{{"name", name}, {"value", value}}); }

  bool passed() const {
    for (const auto& a : assertions)
      if (!a.pass) return false;
    return true;
  }

  json to_json() const {
    json as = json::array();
    for (const auto& a : assertions)
      as.push_back(json{{"name", a.name}, {"expected", a.expected}, {"got", a.got}, {"pass", a.pass}});
    return json{{"probe", probe},
                {"q", q},
                {"r", r},
                {"theta_exponent", theta_exponent ? json(*theta_exponent) : json(nullptr)},
                {"seed", seed},
                {"assertions", as},
                {"observations", observations}};
  }
};

/// An ordered list of records for one run.
class Report {
 public:
  void add(const CharsRecord& c) {
    items_.emplace_back(c.to_json());
    pass_ = pass_ && (c.pass || c.observational);
  }
  void add(const ProbeReport& p) {
    items_.emplace_back(p.to_json());
    pass_ = pass_ && p.passed();
  }
  void append(const Report& other) {
    items_.insert(items_.end(), other.items_.begin(), other.items_.end());
    pass_ = pass_ && other.pass_;
  }

  bool passed() const { return pass_; }
  std::size_t size() const { return items_.size(); }
  const std::vector<json>& records() const { return items_; }

  /// Names of failing checks, for diagnostics.
  std::vector<std::string> failures() const {
    std::vector<std::string> out;
    for (const auto& r : items_) {
      if (r.contains("experiment")) {
        if (r["verdict"] == "FAIL") out.push_back(r["experiment"].get<std::string>());
      } else {
        for (const auto& a : r["assertions"])
          if (!a["pass"].get<bool>()) out.push_back(r["probe"].get<std::string>() + "/" + a["name"].get<std::string>());
      }
    }
    return out;
  }

  std::string to_json_text() const {
    std::string s = "[\n";
    for (std::size_t i = 0; i < items_.size(); ++i) s += items_[i].dump() + (i + 1 < items_.size() ? ",\n" : "\n");
    return s + "]\n";
  }

  static std::string csv_header() { return "kind,name,p_or_q,m,r,k,theta_exponent,seed,check,expected,got,pass\n"; }

  std::string to_csv() const {
    std::ostringstream os;
    os << csv_header();
    for (const auto& r : items_) {
      if (r.contains("experiment")) {
        os << "chars," << r["experiment"].get<std::string>() << ',' << r["p"] << ',' << r["m"] << ',' << r["r"] << ','
           << r["k"] << ",,," << quote(r["params"].dump()) << ',' << quote(r["rhs"].get<std::string>()) << ','
           << quote(r["lhs"].get<std::string>()) << ',' << verdict_cell(r["verdict"].get<std::string>()) << '\n';
      } else {
        for (const auto& a : r["assertions"]) {
          os << "probe," << r["probe"].get<std::string>() << ',' << r["q"] << ",," << r["r"] << ",,"
             << (r["theta_exponent"].is_null() ? "" : r["theta_exponent"].dump()) << ',' << r["seed"] << ','
             << quote(a["name"].get<std::string>()) << ',' << quote(a["expected"].dump()) << ','
             << quote(a["got"].dump()) << ',' << (a["pass"].get<bool>() ? "true" : "false") << '\n';
        }
      }
    }
    return os.str();
  }

 private:
  static std::string verdict_cell(const std::string& v) { return v == "PASS" ? "true" : v == "FAIL" ? "false" : "observed"; }
  static std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
      if (c == '"') out += '"';
      out += c;
    }
    return out + '"';
  }

  std::vector<json> items_;
  bool pass_ = true;
};

}  // namespace crosschar
