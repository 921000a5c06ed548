#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gkpt/cpg.hpp"
#include "gkpt/grid_oracle.hpp"
#include "gkpt/tgate_fidelity.hpp"

namespace gkpt {

/// Gate selector for sweeps: the proposed feedforward gate or a cubic-phase
/// variant ("proposed", "cpg-gkp", "cpg-optimized", "cpg-custom:c0,c1,c2").
struct GateSpec {
  enum class Kind { Proposed, CpgGkp, CpgOptimized, CpgCustom };
  Kind kind = Kind::Proposed;
  CpgGains custom;

  static GateSpec parse(const std::string& text);
  std::string name() const;
  bool is_cpg() const { return kind != Kind::Proposed; }
  CpgGains gains() const;  // CPG kinds only
};

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct FidelitySweepOptions {
  std::vector<double> db_values;
  GateSpec gate;
  SigmaSpec sigma;
  QuadratureConfig quad;
  ModularConfig modular;
};

struct FidelitySweepRow {
  double db = 0.0;
  std::string gate;
  std::string sigma_mode;
  double fidelity = 0.0;
  double rho00_re = 0.0;
  double rho11_re = 0.0;
  double rho01_re = 0.0;
  double rho01_im = 0.0;
  double est_error = 0.0;
  bool converged = true;
};

/// Rows sorted by squeezing_db. Accuracy failures flag est_error and continue.
std::vector<FidelitySweepRow> run_fidelity_sweep(const FidelitySweepOptions& opt);

struct CpgSearchOptions {
  std::vector<double> db_values;
  IntRange n0_range, n1_range, n2_range;
  ModularConfig modular;
};

struct CpgSearchRow {
  double db = 0.0;
  IntegerGainTriple triple;
  CpgGains gains;
  double fidelity = 0.0;
  bool above_threshold = false;
};

/// Long-format rows: per squeezing level, valid triples sorted by descending
/// fidelity. Duplicate triples in the ranges collapse. Throws EmptyResultError
/// when no triple is valid.
std::vector<CpgSearchRow> run_cpg_search(const CpgSearchOptions& opt);

/// RFC-4180-style CSV: comma separated, '.' decimal, LF endings. Numbers are
/// printed with enough digits to round-trip, so identical runs are
/// byte-identical.
std::string to_csv(const std::vector<FidelitySweepRow>& rows);
std::string to_csv(const std::vector<CpgSearchRow>& rows);

/// Run manifest serialized next to every file output: command, resolved
/// parameters, tool version, wall time.
std::string make_manifest(const std::string& command,
                          const std::map<std::string, std::string>& params,
                          double wall_seconds);

double parse_double_strict(const std::string& text);

}  // namespace gkpt
