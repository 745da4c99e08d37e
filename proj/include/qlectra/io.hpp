// JSON and CSV interchange for states, circuits, cavity specs, problem files
// and sampled potentials.
#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qlectra/common.hpp"
#include "qlectra/qadiabatic.hpp"
#include "qlectra/qalgo.hpp"
#include "qlectra/qgate.hpp"
#include "qlectra/qopen.hpp"
#include "qlectra/qstate.hpp"

namespace qlectra::io {

using nlohmann::json;

// 17 significant digits round-trip doubles exactly
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// --- kets and densities: {dims, re, im} -----------------------------------------

inline json ket_to_json(const Ket& psi) {
  json j;
  j["dims"] = psi.dims;
  std::vector<double> re(psi.dim()), im(psi.dim());
  for (long long i = 0; i < psi.dim(); ++i) {
    re[i] = psi.amps(i).real();
    im[i] = psi.amps(i).imag();
  }
  j["re"] = re;
  j["im"] = im;
  return j;
}

inline Ket ket_from_json(const json& j) {
  std::vector<int> dims = j.at("dims").get<std::vector<int>>();
  std::vector<double> re = j.at("re").get<std::vector<double>>();
  std::vector<double> im = j.at("im").get<std::vector<double>>();
  require(re.size() == im.size(), errc::schema_violation, "re/im length mismatch");
  Vec a(static_cast<long long>(re.size()));
  for (size_t i = 0; i < re.size(); ++i) a(static_cast<long long>(i)) = cxd(re[i], im[i]);
  return Ket(std::move(dims), std::move(a));
}

inline json density_to_json(const DensityOp& rho) {
  json j;
  j["dims"] = rho.dims;
  long long n = rho.dim();
  std::vector<double> re(n * n), im(n * n);
  for (long long r = 0; r < n; ++r)
    for (long long c = 0; c < n; ++c) {
      re[r * n + c] = rho.mat(r, c).real();
      im[r * n + c] = rho.mat(r, c).imag();
    }
  j["re"] = re;
  j["im"] = im;
  return j;
}

inline DensityOp density_from_json(const json& j) {
  std::vector<int> dims = j.at("dims").get<std::vector<int>>();
  long long n = product_dim(dims);
  std::vector<double> re = j.at("re").get<std::vector<double>>();
  std::vector<double> im = j.at("im").get<std::vector<double>>();
  require(static_cast<long long>(re.size()) == n * n &&
              static_cast<long long>(im.size()) == n * n,
          errc::schema_violation, "matrix payload size mismatch");
  Mat m(n, n);
  for (long long r = 0; r < n; ++r)
    for (long long c = 0; c < n; ++c) m(r, c) = cxd(re[r * n + c], im[r * n + c]);
  return DensityOp(std::move(dims), std::move(m));
}

// --- circuits: {dims, steps: [{gate: {...}, targets: [...]}]} ---------------------

inline json gate_to_json(const GateMatrix& g) {
  json j;
  j["dim"] = g.dim;
  if (!g.name.empty()) j["name"] = g.name;
  std::vector<double> re(g.dim * g.dim), im(g.dim * g.dim);
  for (long long r = 0; r < g.dim; ++r)
    for (long long c = 0; c < g.dim; ++c) {
      re[r * g.dim + c] = g.mat(r, c).real();
      im[r * g.dim + c] = g.mat(r, c).imag();
    }
  j["re"] = re;
  j["im"] = im;
  return j;
}

inline GateMatrix gate_from_json(const json& j) {
  long long n = j.at("dim").get<long long>();
  std::vector<double> re = j.at("re").get<std::vector<double>>();
  std::vector<double> im = j.at("im").get<std::vector<double>>();
  require(static_cast<long long>(re.size()) == n * n, errc::schema_violation,
          "gate payload size mismatch");
  Mat m(n, n);
  for (long long r = 0; r < n; ++r)
    for (long long c = 0; c < n; ++c) m(r, c) = cxd(re[r * n + c], im[r * n + c]);
  return GateMatrix(std::move(m), j.value("name", std::string{}));
}

inline json circuit_to_json(const Circuit& c) {
  json j;
  j["dims"] = c.dims;
  j["steps"] = json::array();
  for (const auto& s : c.steps) {
    json step;
    step["gate"] = gate_to_json(s.gate);
    step["targets"] = s.targets;
    if (!s.label.empty()) step["label"] = s.label;
    j["steps"].push_back(std::move(step));
  }
  return j;
}

inline Circuit circuit_from_json(const json& j) {
  Circuit c(j.at("dims").get<std::vector<int>>());
  for (const auto& step : j.at("steps")) {
    c.add(gate_from_json(step.at("gate")), step.at("targets").get<std::vector<int>>(),
          step.value("label", std::string{}));
  }
  return c;
}

// --- cavity specs: {omega, g, n_max, rwa, hops} -----------------------------------

inline CavityModel cavity_from_json(const json& j) {
  return CavityModel(j.at("omega").get<double>(), j.at("g").get<std::vector<double>>(),
                     j.value("n_max", 3), j.value("rwa", true));
}

// A flat spec with "hops" describes a chain of identical cavities; the cavity
// count is one past the largest hop index.
inline CavityNetwork network_from_json(const json& j) {
  CavityModel proto = cavity_from_json(j);
  std::vector<std::tuple<int, int, double>> hops;
  int max_idx = 0;
  for (const auto& h : j.at("hops")) {
    require(h.size() == 3, errc::schema_violation, "hop rows are [i, j, mu]");
    int a = h[0].get<int>(), b = h[1].get<int>();
    hops.emplace_back(a, b, h[2].get<double>());
    max_idx = std::max(max_idx, std::max(a, b));
  }
  return CavityNetwork(std::vector<CavityModel>(max_idx + 1, proto), std::move(hops));
}

// --- problem files -----------------------------------------------------------------

inline ProblemSpec problem_from_json(const json& j) {
  if (j.contains("ising")) {
    const json& spec = j.at("ising");
    std::vector<double> h = spec.at("h").get<std::vector<double>>();
    std::vector<std::tuple<int, int, double>> coup;
    for (const auto& row : spec.at("j")) {
      require(row.size() == 3, errc::schema_violation, "coupling rows are [i, j, value]");
      coup.emplace_back(row[0].get<int>(), row[1].get<int>(), row[2].get<double>());
    }
    return ProblemSpec::ising(std::move(h), std::move(coup));
  }
  auto clauses_of = [](const json& arr) {
    std::vector<std::array<int, 3>> clauses;
    int max_var = 0;
    for (const auto& row : arr) {
      require(row.size() == 3, errc::schema_violation, "clauses are literal triples");
      std::array<int, 3> c{row[0].get<int>(), row[1].get<int>(), row[2].get<int>()};
      for (int lit : c) max_var = std::max(max_var, std::abs(lit));
      clauses.push_back(c);
    }
    return std::make_pair(clauses, max_var);
  };
  if (j.contains("sat3")) {
    auto [clauses, n] = clauses_of(j.at("sat3"));
    return ProblemSpec::sat3(n, std::move(clauses));
  }
  if (j.contains("exact_cover")) {
    auto [clauses, n] = clauses_of(j.at("exact_cover"));
    return ProblemSpec::exact_cover(n, std::move(clauses));
  }
  if (j.contains("disagree2")) return ProblemSpec::disagree2();
  fail(errc::schema_violation, "unknown problem kind");
}

inline ProblemSpec problem_from_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), errc::io_failure, "cannot open problem file: " + path);
  json j;
  in >> j;
  return problem_from_json(j);
}

// --- potentials from CSV -------------------------------------------------------------

// Rows "x,V(x)"; values are linearly resampled onto the grid X_k = k/sqrt(N).
inline PotentialGrid potential_from_csv(std::istream& in, int n, double mass) {
  std::vector<std::pair<double, double>> samples;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double x, v;
    if (row >> x >> v) samples.emplace_back(x, v);
  }
  require(samples.size() >= 2, errc::io_failure, "potential file needs at least two rows");
  std::sort(samples.begin(), samples.end());
  long long nn = 1LL << n;
  double root_n = std::sqrt(static_cast<double>(nn));
  RVec grid(nn);
  for (long long k = 0; k < nn; ++k) {
    double x = static_cast<double>(k) / root_n;
    if (x <= samples.front().first) { grid(k) = samples.front().second; continue; }
    if (x >= samples.back().first) { grid(k) = samples.back().second; continue; }
    auto hi = std::upper_bound(samples.begin(), samples.end(), std::make_pair(x, -1e300));
    auto lo = hi - 1;
    double w = (x - lo->first) / (hi->first - lo->first);
    grid(k) = lo->second + w * (hi->second - lo->second);
  }
  return PotentialGrid(n, std::move(grid), mass);
}

inline PotentialGrid potential_from_csv_file(const std::string& path, int n, double mass) {
  std::ifstream in(path);
  require(in.good(), errc::io_failure, "cannot open potential file: " + path);
  return potential_from_csv(in, n, mass);
}

} // namespace qlectra::io
