#pragma once

#include <span>
#include <vector>

#include "bocorr/combinat.hpp"
#include "bocorr/qseries.hpp"

namespace bocorr {

enum class FockKind { boson_pair, boson_neutral, fermion_pair, fermion_neutral };
// A(t); C(t) and D(t) act as A(t) - A(1/t) on pair factors.
enum class OpTag { A, C, D };

struct FockFactor {
  FockKind kind;
  HalfInt central;  // -1, -1/2, 1, 1/2
};

FockFactor make_factor(FockKind kind);
bool is_charged(FockKind kind);
bool is_fermionic(FockKind kind);
std::string kind_name(FockKind kind);

// Basis vector of one factor. For pair factors `plus` holds the modes of
// gamma^+ (or psi^+) and `minus` those of gamma^- (or psi^-); neutral factors
// use `plus` only. Fermionic factors use strict partitions.
struct FactorState {
  Partition plus;
  Partition minus;
};

HalfInt state_energy(const FactorState& s);
// boson pair: l(minus) - l(plus); fermion pair: l(plus) - l(minus); neutral: 0.
int state_charge(FockKind kind, const FactorState& s);

// Eigenvalue of the operator at point t on a basis vector, central term included.
Series eigenvalue(const FockFactor& f, const FactorState& s, OpTag op, const Param& t, HalfInt n);

// State-sum oracles. Points must have no q-shift and no z-dependence.

// sum over the charge-m sector of F^{-1} of q^{L0} prod A(t_j).
Series a_sector_trace(int m, std::span<const Param> points, HalfInt n);
// tr x^A y^B q^{L0} prod A(t_j) over F^{-1}; x counts gamma^+ modes, y gamma^- modes.
Series a_generalized_trace(const Param& x, const Param& y, std::span<const Param> points, HalfInt n);
// Trace over a neutral factor (boson with C, fermion with D).
Series neutral_trace(FockKind kind, std::span<const Param> points, HalfInt n);
// tr z^{charge} q^{L0} prod A(t_j) over the charged free fermion space F^1.
Series f1_charged_trace(const Param& z, std::span<const Param> points, HalfInt n);
// sum over states of one factor of z_var^{charge} q^{L0} prod op(t_j).
Series factor_trace(const FockFactor& f, OpTag op, std::span<const Param> points, HalfInt n, int zvar = 1);

// Trace over the tensor product with z_i^{e_ii} on the i-th charged factor
// (variables numbered by charged factors in order). Built from per-factor
// traces over every assignment of points to factors. When `window` is given,
// entry i restricts the exponent of z_{i+1} to [first, second].
using ZWindow = std::vector<std::pair<int, int>>;
Series duality_trace(std::span<const FockFactor> factors, OpTag op, std::span<const Param> points, HalfInt n,
                     const ZWindow* window = nullptr);
// Same trace by enumerating tensor basis states directly. Intended for tiny n.
Series duality_trace_direct(std::span<const FockFactor> factors, OpTag op, std::span<const Param> points,
                            HalfInt n);

// Mode-resummed oracle: the trace as a sum over set partitions of the points
// of products of connected mode sums, each summed in closed form as an
// exact geometric series. Agrees with the state sums whenever those converge
// and continues them to points with a q-shift (e.g. qt).
// Pair factors weight plus-modes by fug_plus and minus-modes by fug_minus.
Series resummed_trace(FockKind kind, OpTag op, std::span<const Param> points, const Param& fug_plus,
                      const Param& fug_minus, HalfInt n);
Series resummed_a_sector(int m, std::span<const Param> points, HalfInt n);
Series resummed_neutral(FockKind kind, std::span<const Param> points, HalfInt n);

// Set partitions of {0..n-1}, blocks listed in increasing order.
std::vector<std::vector<std::vector<int>>> set_partitions(int n);

}  // namespace bocorr
