#pragma once

#include <cstdint>
#include <vector>

#include "qldm/data.hpp"
#include "qldm/linalg.hpp"

namespace qldm {

struct GaussianFit {
    std::vector<double> mean;
    Matrix covariance;  // unbiased (N-1) estimator
};

GaussianFit fit_gaussian(const LatentDataset& data);

// ||mu_a - mu_b||^2 + Tr(Sa + Sb - 2 (Sa Sb)^{1/2}), with the matrix square
// root taken through the eigendecomposition of Sa^{1/2} Sb Sa^{1/2}.
// Eigenvalues below -1e-10 are an error; small negatives clamp to zero.
double frechet_distance(const GaussianFit& a, const GaussianFit& b);

// Convenience overload fitting both datasets; requires >= d+1 rows each.
double frechet_distance(const LatentDataset& a, const LatentDataset& b);

struct KidReport {
    double mean = 0.0;
    double std = 0.0;
    int subset_size = 0;
    int n_subsets = 0;
};

// Polynomial-kernel MMD^2 (the KID statistic): k(x, y) = (x.y/d + 1)^3,
// unbiased estimator with within-set diagonals excluded, reported as
// mean/std across `n_subsets` random subset pairs.
KidReport kid(const LatentDataset& a, const LatentDataset& b, int subset_size, int n_subsets,
              std::uint64_t seed);

double kid_kernel(const double* x, const double* y, std::size_t d);

}  // namespace qldm
