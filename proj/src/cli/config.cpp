#include "cli/config.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qps::cli {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw ConfigError(path + ": " + what); }

void only_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(path.empty() ? "<root>" : path, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) fail(path.empty() ? it.key() : path + "." + it.key(), "unknown key");
  }
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(path, "must be finite");
  return d;
}

std::size_t count(const json& v, const std::string& path) {
  if (!v.is_number_integer() && !v.is_number_unsigned()) fail(path, "expected a non-negative integer");
  const auto n = v.get<long long>();
  if (n < 1) fail(path, "must be at least 1");
  return static_cast<std::size_t>(n);
}

cplx complex_value(const json& v, const std::string& path) {
  if (v.is_number()) return number(v, path);
  if (!v.is_array() || v.size() != 2) fail(path, "expected [re, im]");
  return {number(v[0], path + "[0]"), number(v[1], path + "[1]")};
}

ExpPolySymbol parse_symbol(const json& s) {
  ExpPolySymbol psi;
  if (!s.contains("c0")) fail("symbol.c0", "missing");
  psi.c0 = complex_value(s["c0"], "symbol.c0");
  if (s.contains("terms")) {
    const json& terms = s["terms"];
    if (!terms.is_array()) fail("symbol.terms", "expected an array");
    for (std::size_t k = 0; k < terms.size(); ++k) {
      const std::string path = "symbol.terms[" + std::to_string(k) + "]";
      only_keys(terms[k], path, {"c", "gamma"});
      if (!terms[k].contains("c")) fail(path + ".c", "missing");
      if (!terms[k].contains("gamma")) fail(path + ".gamma", "missing");
      const double g = number(terms[k]["gamma"], path + ".gamma");
      if (!(g > 0.0)) fail(path + ".gamma", "must be positive");
      psi.terms.push_back({complex_value(terms[k]["c"], path + ".c"), g});
    }
  }
  return psi;
}

}  // namespace

JobConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("<document>: malformed JSON: ") + e.what());
  }
  only_keys(doc, "", {"alpha", "symbol", "p", "series", "grid", "range", "spectrum", "vmo", "outputs"});
  JobConfig c;
  c.source_text = text;

  if (!doc.contains("alpha")) fail("alpha", "missing");
  c.alpha = number(doc["alpha"], "alpha");
  if (!(c.alpha > -1.0)) fail("alpha", "must exceed -1");

  if (!doc.contains("symbol")) fail("symbol", "missing");
  const json& sym = doc["symbol"];
  only_keys(sym, "symbol", {"c0", "terms", "samples"});
  if (sym.contains("samples")) {
    if (sym.contains("c0") || sym.contains("terms")) fail("symbol", "give either c0/terms or samples, not both");
    if (!sym["samples"].is_string()) fail("symbol.samples", "expected a path string");
    c.samples_path = sym["samples"].get<std::string>();
  } else {
    c.symbol = parse_symbol(sym);
  }

  if (doc.contains("p")) {
    c.p = number(doc["p"], "p");
    if (!(c.p > 0.0)) fail("p", "must be positive");
  }
  if (doc.contains("series")) {
    only_keys(doc["series"], "series", {"eps_target"});
    if (doc["series"].contains("eps_target")) {
      c.eps_target = number(doc["series"]["eps_target"], "series.eps_target");
      if (!(c.eps_target > 0.0)) fail("series.eps_target", "must be positive");
    }
  }
  if (doc.contains("grid")) {
    const json& g = doc["grid"];
    only_keys(g, "grid", {"t_count", "t_max"});
    if (g.contains("t_count")) c.grid_t_count = count(g["t_count"], "grid.t_count");
    if (g.contains("t_max")) {
      if (g["t_max"].is_string()) {
        if (g["t_max"].get<std::string>() != "auto") fail("grid.t_max", "expected a number or \"auto\"");
      } else {
        c.grid_t_max = number(g["t_max"], "grid.t_max");
        if (!(*c.grid_t_max > 0.0)) fail("grid.t_max", "must be positive");
      }
    }
    if (c.grid_t_count > 2048) fail("grid.t_count", "at most 2048");
  }
  if (doc.contains("range")) {
    const json& r = doc["range"];
    only_keys(r, "range", {"epsilon", "n_schedule", "X", "per_block"});
    if (r.contains("epsilon")) {
      c.range_epsilon = number(r["epsilon"], "range.epsilon");
      if (!(c.range_epsilon > 0.0)) fail("range.epsilon", "must be positive");
    }
    if (r.contains("n_schedule")) {
      if (!r["n_schedule"].is_array() || r["n_schedule"].empty()) fail("range.n_schedule", "expected a non-empty array");
      c.n_schedule.clear();
      for (std::size_t k = 0; k < r["n_schedule"].size(); ++k) {
        const double n = number(r["n_schedule"][k], "range.n_schedule[" + std::to_string(k) + "]");
        if (n < 0.0) fail("range.n_schedule[" + std::to_string(k) + "]", "must be non-negative");
        c.n_schedule.push_back(n);
      }
    }
    if (r.contains("X")) c.range_X = number(r["X"], "range.X");
    if (r.contains("per_block")) c.range_per_block = count(r["per_block"], "range.per_block");
    double nmax = 0.0;
    for (double n : c.n_schedule) nmax = std::max(nmax, n);
    if (!(nmax < c.range_X)) fail("range.X", "must exceed every n_schedule entry");
  }
  if (doc.contains("spectrum")) {
    const json& s = doc["spectrum"];
    only_keys(s, "spectrum", {"t_max", "t_count"});
    if (s.contains("t_max")) {
      if (s["t_max"].is_string()) {
        if (s["t_max"].get<std::string>() != "auto") fail("spectrum.t_max", "expected a number or \"auto\"");
      } else {
        c.spectrum_t_max = number(s["t_max"], "spectrum.t_max");
        if (!(*c.spectrum_t_max > 0.0)) fail("spectrum.t_max", "must be positive");
      }
    }
    if (s.contains("t_count")) {
      c.spectrum_t_count = count(s["t_count"], "spectrum.t_count");
      if (c.spectrum_t_count < 2) fail("spectrum.t_count", "must be at least 2");
    }
  }
  if (doc.contains("vmo")) {
    const json& v = doc["vmo"];
    only_keys(v, "vmo", {"r_levels", "theta_count"});
    if (v.contains("r_levels")) {
      if (!v["r_levels"].is_array() || v["r_levels"].empty()) fail("vmo.r_levels", "expected a non-empty array");
      c.vmo_r_levels.clear();
      for (std::size_t k = 0; k < v["r_levels"].size(); ++k) {
        const std::string path = "vmo.r_levels[" + std::to_string(k) + "]";
        const double r = number(v["r_levels"][k], path);
        if (!(r > 0.0 && r < 1.0)) fail(path, "must lie in (0, 1)");
        c.vmo_r_levels.push_back(r);
      }
    }
    if (v.contains("theta_count")) c.vmo_theta_count = count(v["theta_count"], "vmo.theta_count");
  }
  if (doc.contains("outputs")) {
    const json& o = doc["outputs"];
    only_keys(o, "outputs", {"dir", "formats"});
    if (o.contains("dir")) {
      if (!o["dir"].is_string()) fail("outputs.dir", "expected a path string");
      c.out_dir = o["dir"].get<std::string>();
    }
    if (o.contains("formats")) {
      if (!o["formats"].is_array()) fail("outputs.formats", "expected an array");
      c.formats.clear();
      for (std::size_t k = 0; k < o["formats"].size(); ++k) {
        const std::string path = "outputs.formats[" + std::to_string(k) + "]";
        if (!o["formats"][k].is_string()) fail(path, "expected a string");
        const std::string f = o["formats"][k].get<std::string>();
        if (f != "csv" && f != "svg" && f != "json") fail(path, "unknown format '" + f + "'");
        c.formats.insert(f);
      }
    }
  }
  return c;
}

JobConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  JobConfig c = parse_config(ss.str());
  if (!c.samples_path.empty() && std::filesystem::path(c.samples_path).is_relative())
    c.samples_path = (std::filesystem::path(path).parent_path() / c.samples_path).string();
  return c;
}

SampledBoundarySymbol load_samples(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("symbol.samples: cannot open '" + path + "'");
  SampledBoundarySymbol s;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    double x, re, im;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &re, &im) != 3) {
      if (lineno == 1) continue;  // header
      throw ConfigError("symbol.samples: line " + std::to_string(lineno) + " is not x,re,im");
    }
    s.x.push_back(x);
    s.values.emplace_back(re, im);
    s.X = std::max(s.X, std::abs(x));
  }
  if (s.x.empty()) throw ConfigError("symbol.samples: no samples in '" + path + "'");
  return s;
}

std::string config_hash(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace qps::cli
