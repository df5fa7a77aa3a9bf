#include "rigidlab/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "rigidlab/errors.hpp"

namespace rigidlab {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

class Parser {
 public:
  Parser(const std::string& text, const std::string& name) : name_(name), in_(text) {}

  ExperimentConfig run() {
    std::string raw;
    while (std::getline(in_, raw)) {
      ++line_;
      std::string line = raw;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;
      if (line.front() == '[') {
        enter_section(line);
        continue;
      }
      dispatch_line(line);
    }
    finish();
    return cfg_;
  }

 private:
  [[noreturn]] void fail(const std::string& message, int line) const {
    throw ConfigError(name_ + ":" + std::to_string(line) + ": " + message);
  }
  [[noreturn]] void fail(const std::string& message) const { fail(message, line_); }

  void enter_section(const std::string& line) {
    if (line.back() != ']') fail("malformed section header '" + line + "'");
    const std::string name = trim(line.substr(1, line.size() - 2));
    static const char* known[] = {"base", "roof", "roof2", "weight", "weight2", "tilt", "params"};
    bool ok = false;
    for (const char* k : known) ok = ok || name == k;
    if (!ok) fail("unknown section [" + name + "]");
    if (!seen_sections_.insert(name).second) fail("duplicate section [" + name + "]");
    section_ = name;
    weight_power_ = 0;
    if (section_ == "roof") cfg_.roof = ScalarField();
    if (section_ == "roof2") cfg_.roof2 = ScalarField();
    if (section_ == "weight") cfg_.weight = FiberWeight();
    if (section_ == "weight2") cfg_.weight2 = FiberWeight();
    if (section_ == "tilt") cfg_.tilt = ScalarField();
  }

  void dispatch_line(const std::string& line) {
    if (section_.empty()) fail("content before any section header: '" + line + "'");
    if (section_ == "base" || section_ == "params") {
      const auto eq = line.find('=');
      if (eq == std::string::npos) fail("expected key = value, got '" + line + "'");
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty()) fail("empty key");
      if (value.empty()) fail("empty value for key '" + key + "'");
      if (!key_lines_.emplace(section_ + "." + key, line_).second) {
        fail("duplicate key '" + key + "' in [" + section_ + "]");
      }
      if (section_ == "base") {
        set_base(key, value);
      } else {
        set_param(key, value);
      }
      return;
    }
    if (section_ == "roof" || section_ == "roof2" || section_ == "tilt") {
      ScalarField& f = section_ == "roof" ? cfg_.roof
                       : section_ == "roof2" ? *cfg_.roof2
                                             : *cfg_.tilt;
      try {
        add_field_line(f, line);
      } catch (const std::invalid_argument& e) {
        fail(std::string(e.what()) + " in [" + section_ + "]");
      }
      return;
    }
    // weight sections: spow switches the fiber power for subsequent terms
    FiberWeight& w = section_ == "weight" ? cfg_.weight : *cfg_.weight2;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head == "spow") {
      int p = 0;
      std::string extra;
      if (!(ls >> p) || (ls >> extra) || p < 0) {
        fail("expected 'spow <power >= 0>', got '" + line + "'");
      }
      weight_power_ = p;
      return;
    }
    ScalarField term;
    try {
      add_field_line(term, line);
    } catch (const std::invalid_argument& e) {
      fail(std::string(e.what()) + " in [" + section_ + "]");
    }
    w.add_component(weight_power_, term);
  }

  void set_base(const std::string& key, const std::string& value) {
    if (key != "matrix") fail("unknown key '" + key + "' in [base] (only 'matrix')");
    std::istringstream vs(value);
    std::string extra;
    if (!(vs >> cfg_.matrix[0] >> cfg_.matrix[1] >> cfg_.matrix[2] >> cfg_.matrix[3]) ||
        (vs >> extra)) {
      fail("matrix wants four integers 'a b c d', got '" + value + "'");
    }
  }

  int parse_int(const std::string& key, const std::string& value) const {
    std::istringstream vs(value);
    long long v = 0;
    std::string extra;
    if (!(vs >> v) || (vs >> extra)) fail("key '" + key + "' wants an integer, got '" + value + "'");
    return static_cast<int>(v);
  }
  std::int64_t parse_i64(const std::string& key, const std::string& value) const {
    std::istringstream vs(value);
    std::int64_t v = 0;
    std::string extra;
    if (!(vs >> v) || (vs >> extra)) fail("key '" + key + "' wants an integer, got '" + value + "'");
    return v;
  }
  double parse_real(const std::string& key, const std::string& value) const {
    std::istringstream vs(value);
    double v = 0;
    std::string extra;
    if (!(vs >> v) || (vs >> extra) || !std::isfinite(v)) {
      fail("key '" + key + "' wants a finite real, got '" + value + "'");
    }
    return v;
  }

  void set_param(const std::string& key, const std::string& value) {
    if (key == "k_max") {
      cfg_.k_max = parse_int(key, value);
      if (cfg_.k_max < 1) fail("k_max must be >= 1");
    } else if (key == "n_lo") {
      cfg_.n_lo = parse_int(key, value);
      if (cfg_.n_lo < 2) fail("n_lo must be >= 2");
    } else if (key == "n_hi") {
      cfg_.n_hi = parse_int(key, value);
      if (cfg_.n_hi < 2) fail("n_hi must be >= 2");
    } else if (key == "n") {
      cfg_.n = parse_int(key, value);
      if (cfg_.n < 2 || cfg_.n > 5) fail("n must lie in 2..5");
    } else if (key == "m_x") {
      cfg_.m[0] = parse_i64(key, value);
    } else if (key == "m_y") {
      cfg_.m[1] = parse_i64(key, value);
    } else if (key == "t") {
      cfg_.t = parse_real(key, value);
      if (cfg_.t < 0.0) fail("t must be >= 0");
    } else if (key == "delta") {
      cfg_.delta = parse_real(key, value);
      if (!(cfg_.delta > 0.0)) fail("delta must be > 0");
    } else if (key == "t_max") {
      cfg_.t_max = parse_real(key, value);
      if (*cfg_.t_max < 0.0) fail("t_max must be >= 0");
    } else if (key == "t_step") {
      cfg_.t_step = parse_real(key, value);
      if (!(*cfg_.t_step > 0.0)) fail("t_step must be > 0");
    } else if (key == "h0") {
      cfg_.h0 = parse_real(key, value);
      if (!(cfg_.h0 > 0.0)) fail("h0 must be > 0");
    } else if (key == "tol") {
      cfg_.tol = parse_real(key, value);
      if (*cfg_.tol < 0.0) fail("tol must be >= 0");
    } else if (key == "b_kind") {
      if (value != "zero" && value != "minus_log_ju" && value != "constant_rate") {
        fail("b_kind must be zero, minus_log_ju, or constant_rate; got '" + value + "'");
      }
      cfg_.b_kind = value;
    } else if (key == "b_rate") {
      cfg_.b_rate = parse_real(key, value);
    } else if (key == "b_offset") {
      cfg_.b_offset = parse_real(key, value);
    } else if (key == "method") {
      if (value != "analytic" && value != "fd" && value != "both") {
        fail("method must be analytic, fd, or both; got '" + value + "'");
      }
      cfg_.method = value;
    } else {
      fail("unknown key '" + key + "' in [params]");
    }
  }

  void finish() const {
    if (cfg_.n_hi < cfg_.n_lo) {
      const auto it = key_lines_.find("params.n_hi");
      fail("n_hi (" + std::to_string(cfg_.n_hi) + ") is below n_lo (" + std::to_string(cfg_.n_lo) +
               ")",
           it != key_lines_.end() ? it->second : line_);
    }
    if (cfg_.m[0] == 0 && cfg_.m[1] == 0) {
      const auto it = key_lines_.find("params.m_x");
      fail("homoclinic lattice shift m must be nonzero",
           it != key_lines_.end() ? it->second : line_);
    }
  }

  std::string name_;
  std::istringstream in_;
  int line_ = 0;
  std::string section_;
  int weight_power_ = 0;
  std::set<std::string> seen_sections_;
  std::map<std::string, int> key_lines_;
  ExperimentConfig cfg_;
};

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::string& name) {
  return Parser(text, name).run();
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

}  // namespace rigidlab
