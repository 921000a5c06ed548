#include "gkpt/comb_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace gkpt {

double LatticeStep::value() const {
  return kSqrtPi * std::pow(2.0, 0.5 * half_log2);
}

double IdealComb1::norm2() const {
  double s = 0.0;
  for (const auto& [n, a] : amps) s += std::norm(a);
  return s;
}

IdealComb1 IdealComb1::pruned(double floor) const {
  IdealComb1 out{step, {}};
  for (const auto& [n, a] : amps) {
    if (std::abs(a) > floor) out.amps.emplace(n, a);
  }
  return out;
}

double IdealComb2::norm2() const {
  double s = 0.0;
  for (const auto& [n, a] : amps) s += std::norm(a);
  return s;
}

IdealComb2 tensor(const IdealComb1& first, const IdealComb1& second) {
  if (!(first.step == second.step)) {
    throw LatticeError("tensor: incommensurate lattices");
  }
  IdealComb2 out{first.step, {}};
  for (const auto& [n1, a1] : first.amps) {
    for (const auto& [n2, a2] : second.amps) {
      out.amps[{n1, n2}] = a1 * a2;
    }
  }
  return out;
}

IdealComb2 beam_splitter_5050(const IdealComb2& state) {
  IdealComb2 out{{state.step.half_log2 - 1}, {}};
  for (const auto& [nn, a] : state.amps) {
    const auto [n1, n2] = nn;
    // (x1,x2) -> ((-x1+x2)/sqrt2, (x1+x2)/sqrt2); in units of step/sqrt2 the
    // new indices are integers (n2-n1, n1+n2). Injective, so norm-preserving.
    out.amps[{n2 - n1, n1 + n2}] += a;
  }
  return out;
}

IdealComb1 homodyne_x_condition(const IdealComb2& state, CombMode measured,
                                long long q1_index) {
  IdealComb1 out{state.step, {}};
  for (const auto& [nn, a] : state.amps) {
    const auto [n1, n2] = nn;
    const long long meas = (measured == CombMode::A) ? n1 : n2;
    const long long rest = (measured == CombMode::A) ? n2 : n1;
    if (meas == q1_index) out.amps[rest] += a;
  }
  return out;
}

IdealComb1 homodyne_x_condition(const IdealComb2& state, CombMode measured, double q1) {
  const double step = state.step.value();
  const double idx = q1 / step;
  const long long n = std::llround(idx);
  if (std::abs(idx - static_cast<double>(n)) > 1e-9) {
    throw LatticeError("homodyne_x_condition: q1 off-lattice");
  }
  return homodyne_x_condition(state, measured, n);
}

IdealComb1 apply_usq(const IdealComb1& state) {
  return {{state.step.half_log2 - 1}, state.amps};
}

IdealComb1 apply_displacement_x(const IdealComb1& state, double x0) {
  const double step = state.step.value();
  const double idx = x0 / step;
  const long long shift = std::llround(idx);
  if (std::abs(idx - static_cast<double>(shift)) > 1e-9) {
    throw LatticeError("apply_displacement_x: x0 not on the lattice");
  }
  IdealComb1 out{state.step, {}};
  for (const auto& [n, a] : state.amps) out.amps[n + shift] = a;
  return out;
}

IdealComb1 apply_shear(const IdealComb1& state, double kappa) {
  // x^2 = n^2 * pi * 2^half_log2.
  const double step2 = kPi * std::pow(2.0, state.step.half_log2);
  IdealComb1 out{state.step, {}};
  for (const auto& [n, a] : state.amps) {
    const double x2 = static_cast<double>(n) * static_cast<double>(n) * step2;
    out.amps[n] = a * std::polar(1.0, 0.5 * kappa * x2);
  }
  return out;
}

IdealComb1 apply_tgate_comb(const IdealComb1& state) {
  IdealComb1 out{state.step, {}};
  for (const auto& [n, a] : state.amps) {
    out.amps[n] = (((n % 2) + 2) % 2 == 1) ? a * std::polar(1.0, kPi / 4.0) : a;
  }
  return out;
}

IdealComb1 make_logical_comb(const LogicalAmplitudes& amps, int truncation) {
  IdealComb1 out{{0}, {}};
  for (long long n = -truncation; n <= truncation; ++n) {
    out.amps[n] = (((n % 2) + 2) % 2 == 0) ? amps.a : amps.b;
  }
  return out;
}

namespace {

// Fig. 1(b) feedforward for one measurement outcome q1 = j * sqrt(pi/2):
// squeezer, displacement by q1/sqrt2, then the shear P(kappa) with
// kappa = j mod 2.
IdealComb1 feedforward(const IdealComb1& conditional, long long j) {
  const int kappa = static_cast<int>(((j % 2) + 2) % 2);
  IdealComb1 state = apply_usq(conditional);
  const double q1 = static_cast<double>(j) * kSqrtHalfPi;
  state = apply_displacement_x(state, q1 / kSqrt2);
  if (kappa == 1) state = apply_shear(state, 1.0);
  return state;
}

}  // namespace

double verify_tgate_identity(const LogicalAmplitudes& amps, int truncation) {
  if (truncation < 4) throw std::invalid_argument("verify_tgate_identity: truncation must be >= 4");

  const LogicalAmplitudes norm_amps = amps.normalized();
  const IdealComb1 input = make_logical_comb(norm_amps, truncation);
  const IdealComb1 reference = apply_tgate_comb(input);

  const IdealComb2 joint = tensor(make_logical_comb(t_state(), truncation), input);
  const IdealComb2 after_bs = beam_splitter_5050(joint);

  double max_dev = 0.0;
  for (long long j = -truncation; j <= truncation; ++j) {
    const IdealComb1 cond = homodyne_x_condition(after_bs, CombMode::A, j);
    if (cond.amps.empty()) continue;
    const IdealComb1 result = feedforward(cond, j);
    // result lives on the sqrt(pi)/2 lattice; the reference on sqrt(pi).
    // Each branch covers a shifted sub-window of the infinite comb, so the
    // truncation shell is excluded relative to the branch's own support.
    const long long lo = result.amps.begin()->first;
    const long long hi = result.amps.rbegin()->first;
    const long long ceil_half_lo = (lo % 2 == 0) ? lo / 2 : (lo + 1) / 2;
    const long long floor_half_hi = (hi % 2 == 0) ? hi / 2 : (hi - 1) / 2;
    long long ref_lo = ceil_half_lo + 2;
    long long ref_hi = floor_half_hi - 2;
    ref_lo = std::max(ref_lo, -static_cast<long long>(truncation) + 2);
    ref_hi = std::min(ref_hi, static_cast<long long>(truncation) - 2);
    if (ref_hi < ref_lo) continue;  // outcome with no interior support

    // Align scale and global phase on the largest interior amplitude.
    long long best_n = 0;
    double best_mag = 0.0;
    for (const auto& [n, a] : result.amps) {
      if (n % 2 != 0) continue;
      const long long ref_n = n / 2;
      if (ref_n < ref_lo || ref_n > ref_hi) continue;
      if (std::abs(a) > best_mag) {
        best_mag = std::abs(a);
        best_n = n;
      }
    }
    if (best_mag < 1e-12) continue;
    const Complex scale = reference.amps.at(best_n / 2) / result.amps.at(best_n);

    for (long long ref_n = ref_lo; ref_n <= ref_hi; ++ref_n) {
      const auto it = result.amps.find(2 * ref_n);
      const Complex got = (it == result.amps.end()) ? Complex(0.0) : it->second * scale;
      max_dev = std::max(max_dev, std::abs(got - reference.amps.at(ref_n)));
    }
    // Half-lattice points inside the interior must stay empty.
    for (const auto& [n, a] : result.amps) {
      if (n % 2 == 0) continue;
      if (n < 2 * ref_lo || n > 2 * ref_hi) continue;
      max_dev = std::max(max_dev, std::abs(a * scale));
    }
  }
  return max_dev;
}

}  // namespace gkpt
