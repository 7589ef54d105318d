#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "sop/circuit.hpp"
#include "sop/errors.hpp"
#include "sop/rewrite.hpp"
#include "sop/term.hpp"

namespace sop {

enum class VerifyStatus {
  VerifiedByRewrite,  // rewriting alone reduced dagger(b) . a to the identity form
  VerifiedByOracle,   // rewriting stalled but the exact matrices agree
  Refuted,            // a concrete basis pair with different amplitudes exists
  Inconclusive,       // rewriting stalled and the circuit is too wide for the oracle
};

inline const char* verify_status_name(VerifyStatus s) {
  switch (s) {
    case VerifyStatus::VerifiedByRewrite: return "verified-by-rewrite";
    case VerifyStatus::VerifiedByOracle: return "verified-by-oracle";
    case VerifyStatus::Refuted: return "refuted";
    case VerifyStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

/// A basis pair on which the two circuit matrices disagree, with both exact
/// amplitudes: <row| U_a |col> vs <row| U_b |col>.
struct VerifyWitness {
  std::size_t row = 0, col = 0;
  std::size_t qubits = 0;
  CycloNumber lhs, rhs;
};

struct VerifyResult {
  VerifyStatus status = VerifyStatus::Inconclusive;
  SopTerm residual;  // reduce(compose(dagger(b), a)), whatever it came to
  bool hit_step_limit = false;
  /// Set when the residual is the identity up to a global phase; zero means
  /// the circuits agree exactly, anything else is the phase of a relative to b.
  std::optional<DyadicMod1> global_phase;
  std::optional<VerifyWitness> witness;
};

struct VerifyOptions {
  Strategy strategy = default_strategy();
  std::size_t oracle_cap = 10;  // widest circuit the matrix oracle will take on
};

/// Decides whether two same-width circuits implement the same unitary.
/// First tries pure rewriting on dagger(b) . a; if that stalls short of the
/// identity form, falls back to exact matrix comparison when the width allows.
inline VerifyResult verify_equivalence(const Circuit& a, const Circuit& b, const VerifyOptions& opt = {}) {
  if (a.qubits != b.qubits)
    throw WidthMismatchError("cannot compare a " + std::to_string(a.qubits) + "-qubit circuit with a " +
                             std::to_string(b.qubits) + "-qubit one");
  SopTerm ta = circuit_to_sop(a);
  SopTerm tb = circuit_to_sop(b);

  VerifyResult res;
  ReduceResult rr = reduce(compose(dagger(tb), ta), opt.strategy);
  res.residual = rr.term;
  res.hit_step_limit = rr.hit_step_limit;
  if (auto ph = identity_global_phase(rr.term)) {
    res.status = VerifyStatus::VerifiedByRewrite;
    res.global_phase = ph;
    return res;
  }

  if (a.qubits > opt.oracle_cap) return res;  // Inconclusive
  try {
    SopTerm ra = reduce(ta, opt.strategy).term;
    SopTerm rb = reduce(tb, opt.strategy).term;
    SopMatrix ma = interp(ra);
    SopMatrix mb = interp(rb);
    for (std::size_t i = 0; i < ma.rows(); ++i)
      for (std::size_t j = 0; j < ma.cols(); ++j) {
        if (ma.at(i, j) == mb.at(i, j)) continue;
        res.status = VerifyStatus::Refuted;
        res.witness = VerifyWitness{i, j, a.qubits, ma.at(i, j), mb.at(i, j)};
        return res;
      }
    res.status = VerifyStatus::VerifiedByOracle;
  } catch (const TooManyVariablesError&) {
    // The irreducible forms still bind too many path variables to enumerate.
  }
  return res;
}

}  // namespace sop
