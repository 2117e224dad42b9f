#pragma once

#include <complex>
#include <vector>

#include "sflab/polynomial.hpp"

namespace sflab {

struct RootCluster {
  cplx location;
  int multiplicity = 1;
};

/// All roots of p by Aberth-Ehrlich simultaneous iteration, Newton-polished.
/// Throws RootFindingError when the iteration stalls with a large residual.
std::vector<cplx> aberth_roots(const Polynomial& p, int max_iterations = 500);

/// Roots grouped into clusters with multiplicities summing to deg p.
///
/// Roots closer than cluster_tol always merge.  A wider group of m roots
/// merges when Newton on the (m-1)-th derivative, started at the centroid,
/// lands inside the group; that root becomes the cluster location.
std::vector<RootCluster> root_clusters(const Polynomial& p, double cluster_tol = 1e-8);

}  // namespace sflab
