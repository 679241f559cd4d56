#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "aoi/graph.hpp"

namespace aoi {

/// Instance outside what the subset-chain oracle can handle.
class OracleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Brute-force ground truth for T(v, sources) on small auxiliary graphs.
//
// The explored set S of the exponential-weight exploration is a Markov
// chain: from S the next node w outside S joins at rate
// r(S, w) = sum over u in S of rate(u -> w), and the chain is absorbed
// when any source joins. States are bitmasks over the ordinary nodes.

/// E T(v, sources) via E[S] = (1 + sum_w r(S,w) E[S + w]) / R(S).
double exact_expected_passage(const AuxiliaryGraph& aux, NodeId v,
                              std::size_t max_nodes = 20);

/// P(T(v, sources) > a) by uniformisation of the subset chain, Poisson
/// series truncated once its remaining mass is below 1e-10.
double exact_survival(const AuxiliaryGraph& aux, NodeId v, double a,
                      std::size_t max_nodes = 12);

/// exact_survival evaluated at every point of `grid`, sharing one chain.
std::vector<double> exact_survival_curve(const AuxiliaryGraph& aux, NodeId v,
                                         std::span<const double> grid,
                                         std::size_t max_nodes = 12);

}  // namespace aoi
