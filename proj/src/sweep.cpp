#include "gkpt/sweep.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include <json.hpp>

namespace gkpt {

GateSpec GateSpec::parse(const std::string& text) {
  GateSpec spec;
  if (text == "proposed") {
    spec.kind = Kind::Proposed;
  } else if (text == "cpg-gkp") {
    spec.kind = Kind::CpgGkp;
  } else if (text == "cpg-optimized") {
    spec.kind = Kind::CpgOptimized;
  } else if (text.rfind("cpg-custom:", 0) == 0) {
    spec.kind = Kind::CpgCustom;
    const std::string rest = text.substr(11);
    std::istringstream ss(rest);
    std::string part;
    std::vector<double> vals;
    while (std::getline(ss, part, ',')) vals.push_back(parse_double_strict(part));
    if (vals.size() != 3) throw UsageError("gate spec: cpg-custom needs c0,c1,c2");
    spec.custom = {vals[0], vals[1], vals[2]};
  } else {
    throw UsageError("gate spec: expected proposed, cpg-gkp, cpg-optimized or cpg-custom:c0,c1,c2");
  }
  return spec;
}

std::string GateSpec::name() const {
  switch (kind) {
    case Kind::Proposed: return "proposed";
    case Kind::CpgGkp: return "cpg-gkp";
    case Kind::CpgOptimized: return "cpg-optimized";
    case Kind::CpgCustom: {
      char buf[96];
      std::snprintf(buf, sizeof(buf), "cpg-custom:%.17g,%.17g,%.17g", custom.c0,
                    custom.c1, custom.c2);
      return buf;
    }
  }
  return "?";
}

CpgGains GateSpec::gains() const {
  switch (kind) {
    case Kind::CpgGkp: return gkp_original_gains();
    case Kind::CpgOptimized: return optimized_gains();
    case Kind::CpgCustom: return custom;
    case Kind::Proposed: break;
  }
  throw std::logic_error("GateSpec::gains: not a CPG gate");
}

double parse_double_strict(const std::string& text) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw UsageError("expected a number, got '" + text + "'");
  }
  if (pos != text.size()) throw UsageError("trailing characters in number '" + text + "'");
  return v;
}

std::vector<FidelitySweepRow> run_fidelity_sweep(const FidelitySweepOptions& opt) {
  if (opt.db_values.empty()) throw UsageError("fidelity sweep: empty squeezing list");

  std::vector<double> dbs = opt.db_values;
  std::sort(dbs.begin(), dbs.end());

  std::vector<FidelitySweepRow> rows;
  rows.reserve(dbs.size());
  for (const double db : dbs) {
    FidelitySweepRow row;
    row.db = db;
    row.gate = opt.gate.name();
    const double delta = db_to_delta(db);
    if (opt.gate.is_cpg()) {
      row.sigma_mode = "n/a";
      const CpgFidelityResult res = cpg_logical_fidelity(delta, opt.gate.gains(), opt.modular);
      row.fidelity = res.fidelity;
      row.rho00_re = res.rho.rho00();
      row.rho11_re = res.rho.rho11();
      row.rho01_re = res.rho.rho01().real();
      row.rho01_im = res.rho.rho01().imag();
      row.est_error = res.est_error;
      row.converged = res.converged;
    } else {
      row.sigma_mode = opt.sigma.name();
      const TgateDmResult res = tgate_logical_dm(delta, opt.sigma, opt.quad);
      row.fidelity = logical_fidelity(res.rho, t_state());
      row.rho00_re = res.rho.rho00();
      row.rho11_re = res.rho.rho11();
      row.rho01_re = res.rho.rho01().real();
      row.rho01_im = res.rho.rho01().imag();
      row.est_error = res.est_error;
      row.converged = res.converged;
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<CpgSearchRow> run_cpg_search(const CpgSearchOptions& opt) {
  if (opt.db_values.empty()) throw UsageError("cpg search: empty squeezing list");
  // duplicate squeezing levels would only duplicate rows here
  const std::set<double> db_set(opt.db_values.begin(), opt.db_values.end());
  const std::vector<double> dbs(db_set.begin(), db_set.end());

  std::vector<CpgSearchRow> rows;
  for (const double db : dbs) {
    const std::vector<GainSearchRow> found =
        gain_search(opt.n0_range, opt.n1_range, opt.n2_range, db_to_delta(db), opt.modular);
    for (const GainSearchRow& r : found) {
      CpgSearchRow row;
      row.db = db;
      row.triple = r.triple;
      row.gains = r.gains;
      row.fidelity = r.fidelity;
      row.above_threshold = classify_distillation(r.fidelity) == DistillationClass::Above;
      rows.push_back(row);
    }
  }
  return rows;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

std::string to_csv(const std::vector<FidelitySweepRow>& rows) {
  std::string out =
      "squeezing_db,gate,sigma_mode,fidelity,rho00_re,rho11_re,rho01_re,rho01_im,est_error\n";
  for (const FidelitySweepRow& r : rows) {
    out += fmt(r.db) + ',' + r.gate + ',' + r.sigma_mode + ',' + fmt(r.fidelity) + ',' +
           fmt(r.rho00_re) + ',' + fmt(r.rho11_re) + ',' + fmt(r.rho01_re) + ',' +
           fmt(r.rho01_im) + ',' + fmt(r.est_error) + '\n';
  }
  return out;
}

std::string to_csv(const std::vector<CpgSearchRow>& rows) {
  std::string out =
      "squeezing_db,n0,n1,n2,c0,c1,c2,fidelity,above_distillation_threshold\n";
  for (const CpgSearchRow& r : rows) {
    out += fmt(r.db) + ',' + std::to_string(r.triple.n0) + ',' + std::to_string(r.triple.n1) +
           ',' + std::to_string(r.triple.n2) + ',' + fmt(r.gains.c0) + ',' + fmt(r.gains.c1) +
           ',' + fmt(r.gains.c2) + ',' + fmt(r.fidelity) + ',' +
           (r.above_threshold ? "true" : "false") + '\n';
  }
  return out;
}

std::string make_manifest(const std::string& command,
                          const std::map<std::string, std::string>& params,
                          double wall_seconds) {
  nlohmann::json j;
  j["command"] = command;
  j["version"] = GKPT_VERSION;
  j["wall_time_s"] = wall_seconds;
  nlohmann::json p = nlohmann::json::object();
  for (const auto& [k, v] : params) p[k] = v;
  j["params"] = p;
  return j.dump(2) + "\n";
}

}  // namespace gkpt
