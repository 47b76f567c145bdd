#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "skewmix/data.hpp"
#include "skewmix/params.hpp"

namespace skewmix {

/// Finite mixture of skew components with shared (family, p, r).
struct MixtureModel {
    Eigen::VectorXd weights;
    std::vector<SkewParams> components;

    int g() const { return static_cast<int>(components.size()); }
    int p() const { return components.at(0).p(); }
    int r() const { return components.at(0).r(); }
    SkewFamily family() const { return components.at(0).family; }

    void validate() const;
};

enum class InitStrategy { KMeans, NormalMixture, RandomPartition, LegacyConstant };

std::string init_name(InitStrategy init);
InitStrategy init_from_name(const std::string& name);

struct FitOptions {
    int max_iter = 500;
    double tol_loglik = 1e-6;           // relative, 3 consecutive iterations
    InitStrategy init = InitStrategy::KMeans;
    int n_starts = 4;
    std::uint64_t seed = 20190101;
    std::pair<double, double> nu_bounds = {1e-2, 1e4};
    int qmc_points = 512;               // latent-moment budget per obs for r >= 3
};

struct FitReport {
    MixtureModel model;
    std::vector<double> loglik_trace;
    Eigen::MatrixXd responsibilities;   // n x g, rows sum to 1
    double bic = 0.0;
    bool converged = false;
    int n_iter = 0;
    InitStrategy init_used = InitStrategy::KMeans;
    SkewKind kind = SkewKind::Full;
    std::string stop_reason;

    double final_loglik() const { return loglik_trace.empty() ? 0.0 : loglik_trace.back(); }
};

/// Initial mixture from a hard partition strategy. The skewness start uses
/// per-cluster third-moment signs scaled by cluster standard deviations, so
/// rescaling a feature rescales the start with it (LegacyConstant instead
/// plants a fixed constant in every delta entry, deliberately ignoring
/// scale). CFUST components start at nu = 40.
MixtureModel initialize(const DataMatrix& data, int g, SkewFamily family, SkewKind kind,
                        const FitOptions& opts);

/// Responsibilities and observed-data log-likelihood of a fixed model.
std::pair<Eigen::MatrixXd, double> e_step(const DataMatrix& data, const MixtureModel& model);

/// Full EM fit: best of opts.n_starts independent starts.
FitReport fit_em(const DataMatrix& data, int g, SkewFamily family, SkewKind kind,
                 const FitOptions& opts);

/// Free parameter count: per component p (mu) + p(p+1)/2 (sigma) + delta
/// entries by kind + a tail parameter for CFUST, plus g - 1 weights.
int count_free_params(SkewFamily family, SkewKind kind, int p, int r, int g);

/// -2 loglik + d log n with d from the report's family/kind/shape.
double bic(const FitReport& report, int n);

/// Undoes a per-column z-score transform on every component.
MixtureModel destandardize_model(const MixtureModel& model, const Eigen::VectorXd& means,
                                 const Eigen::VectorXd& sds);

std::string mixture_to_json(const MixtureModel& model, int indent = 2);
MixtureModel mixture_from_json(const std::string& text);
std::string fit_report_to_json(const FitReport& report, bool include_responsibilities, int indent = 2);

/// Seeded k-means hard partition (kmeans++ starts, Lloyd iterations);
/// exposed for the scale-equivariance tests.
std::vector<int> kmeans_partition(Rng& rng, const Eigen::MatrixXd& values, int g);

} // namespace skewmix
