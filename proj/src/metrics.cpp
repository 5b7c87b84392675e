#include "qldm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qldm/errors.hpp"
#include "qldm/rng.hpp"

namespace qldm {

namespace {

constexpr double kEigFloor = -1e-10;

// V diag(f(lambda)) V^T for a symmetric PSD matrix; negative eigenvalues
// beyond the floor abort, the rest clamp to zero.
Matrix psd_function(const Matrix& sym, double (*f)(double), const char* what) {
    std::vector<double> vals;
    Matrix vecs;
    eigh_sym(sym, vals, vecs);
    const std::size_t n = sym.rows;
    for (auto& v : vals) {
        if (v < kEigFloor)
            throw ContractError(std::string(what) + ": matrix not PSD (eigenvalue " +
                                std::to_string(v) + ")");
        v = f(v < 0.0 ? 0.0 : v);
    }
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += vecs(i, k) * vals[k] * vecs(j, k);
            out(i, j) = s;
        }
    return out;
}

double trace_sqrt_product(const Matrix& sa, const Matrix& sb) {
    const Matrix a_half = psd_function(sa, [](double x) { return std::sqrt(x); }, "frechet");
    Matrix m = matmul(matmul(a_half, sb), a_half);
    // symmetrize against round-off before eigendecomposing
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = i + 1; j < m.cols; ++j) {
            const double avg = 0.5 * (m(i, j) + m(j, i));
            m(i, j) = avg;
            m(j, i) = avg;
        }
    std::vector<double> vals;
    Matrix vecs;
    eigh_sym(m, vals, vecs);
    double tr = 0.0;
    for (double v : vals) {
        if (v < kEigFloor)
            throw ContractError("frechet: product matrix not PSD (eigenvalue " +
                                std::to_string(v) + ")");
        tr += std::sqrt(v < 0.0 ? 0.0 : v);
    }
    return tr;
}

}  // namespace

GaussianFit fit_gaussian(const LatentDataset& data) {
    if (data.count < 2) throw ContractError("fit_gaussian: need at least 2 rows");
    const std::size_t d = data.dim;
    GaussianFit fit;
    fit.mean.assign(d, 0.0);
    for (std::size_t i = 0; i < data.count; ++i)
        for (std::size_t j = 0; j < d; ++j) fit.mean[j] += data.row(i)[j];
    for (auto& m : fit.mean) m /= static_cast<double>(data.count);

    fit.covariance = Matrix(d, d);
    for (std::size_t i = 0; i < data.count; ++i) {
        const double* r = data.row(i);
        for (std::size_t j = 0; j < d; ++j) {
            const double cj = r[j] - fit.mean[j];
            for (std::size_t k = j; k < d; ++k)
                fit.covariance(j, k) += cj * (r[k] - fit.mean[k]);
        }
    }
    const double denom = static_cast<double>(data.count - 1);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = j; k < d; ++k) {
            fit.covariance(j, k) /= denom;
            fit.covariance(k, j) = fit.covariance(j, k);
        }
    return fit;
}

double frechet_distance(const GaussianFit& a, const GaussianFit& b) {
    if (a.mean.size() != b.mean.size()) throw ContractError("frechet: dimension mismatch");
    double mean_term = 0.0;
    for (std::size_t i = 0; i < a.mean.size(); ++i) {
        const double d = a.mean[i] - b.mean[i];
        mean_term += d * d;
    }
    double trace_a = 0.0, trace_b = 0.0;
    for (std::size_t i = 0; i < a.mean.size(); ++i) {
        trace_a += a.covariance(i, i);
        trace_b += b.covariance(i, i);
    }
    return mean_term + trace_a + trace_b - 2.0 * trace_sqrt_product(a.covariance, b.covariance);
}

double frechet_distance(const LatentDataset& a, const LatentDataset& b) {
    if (a.dim != b.dim) throw ContractError("frechet: latent dimension mismatch");
    if (a.count < a.dim + 1 || b.count < b.dim + 1)
        throw ContractError("frechet: need at least d+1 rows per dataset for a full-rank fit");
    return frechet_distance(fit_gaussian(a), fit_gaussian(b));
}

double kid_kernel(const double* x, const double* y, std::size_t d) {
    double dot = 0.0;
    for (std::size_t i = 0; i < d; ++i) dot += x[i] * y[i];
    const double base = dot / static_cast<double>(d) + 1.0;
    return base * base * base;
}

namespace {

// indices without replacement via partial Fisher-Yates; sorted so the
// estimator accumulates in dataset order
std::vector<std::size_t> draw_subset(std::mt19937_64& g, std::size_t n, std::size_t m) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(bounded(g, n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(m);
    std::sort(idx.begin(), idx.end());
    return idx;
}

double mmd2_unbiased(const LatentDataset& a, const std::vector<std::size_t>& ia,
                     const LatentDataset& b, const std::vector<std::size_t>& ib) {
    const std::size_t m = ia.size();
    const std::size_t d = a.dim;
    double kxx = 0.0, kyy = 0.0, kxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (i != j) {
                kxx += kid_kernel(a.row(ia[i]), a.row(ia[j]), d);
                kyy += kid_kernel(b.row(ib[i]), b.row(ib[j]), d);
            }
            kxy += kid_kernel(a.row(ia[i]), b.row(ib[j]), d);
        }
    }
    const double mm = static_cast<double>(m);
    return kxx / (mm * (mm - 1.0)) + kyy / (mm * (mm - 1.0)) - 2.0 * kxy / (mm * mm);
}

}  // namespace

KidReport kid(const LatentDataset& a, const LatentDataset& b, int subset_size, int n_subsets,
              std::uint64_t seed) {
    if (a.dim != b.dim) throw ContractError("kid: latent dimension mismatch");
    if (subset_size < 2) throw ContractError("kid: subset_size must be >= 2");
    if (n_subsets < 1) throw ContractError("kid: n_subsets must be >= 1");
    if (static_cast<std::size_t>(subset_size) > a.count ||
        static_cast<std::size_t>(subset_size) > b.count)
        throw ContractError("kid: subset_size exceeds dataset size");

    std::vector<double> estimates(static_cast<std::size_t>(n_subsets), 0.0);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t s = 0; s < n_subsets; ++s) {
        auto g = make_stream(seed, RngStream::Evaluation, static_cast<std::uint64_t>(s));
        const auto ia = draw_subset(g, a.count, static_cast<std::size_t>(subset_size));
        const auto ib = draw_subset(g, b.count, static_cast<std::size_t>(subset_size));
        estimates[static_cast<std::size_t>(s)] = mmd2_unbiased(a, ia, b, ib);
    }

    KidReport report;
    report.subset_size = subset_size;
    report.n_subsets = n_subsets;
    report.mean = std::accumulate(estimates.begin(), estimates.end(), 0.0) /
                  static_cast<double>(n_subsets);
    if (n_subsets > 1) {
        double ss = 0.0;
        for (double e : estimates) {
            const double d = e - report.mean;
            ss += d * d;
        }
        report.std = std::sqrt(ss / static_cast<double>(n_subsets - 1));
    }
    return report;
}

}  // namespace qldm
