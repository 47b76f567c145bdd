#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>

#include "skewmix/gig.hpp"
#include "skewmix/spd.hpp"

namespace skewmix {

enum class SkewFamily { Cfusn, Cfust, Hth, Smcfusn };

/// Structural constraint on the skewness matrix.
enum class SkewKind { Full, Restricted, Diagonal };

std::string family_name(SkewFamily family);
SkewFamily family_from_name(const std::string& name);
std::string kind_name(SkewKind kind);
SkewKind kind_from_name(const std::string& name);

/// Parameter record shared by all densities: location, scale, p x r skewness
/// matrix and the family tail parameters. Construction validates that both
/// the total scale (sigma + delta delta^T) and the conditional scale of the
/// latent skew vector are positive definite, and caches their factorizations.
struct SkewParams {
    Eigen::VectorXd mu;
    SpdMatrix sigma;
    Eigen::MatrixXd delta;
    SkewFamily family = SkewFamily::Cfusn;

    double nu = 0.0;                 // Cfust degrees of freedom
    double omega = 0.0;              // Hth GIG concentration (psi = chi = omega)
    double gig_index = 0.0;          // Hth GIG index
    std::optional<GigParams> mixing; // Smcfusn mixing distribution

    // cached at construction
    SpdMatrix scale_total;  // sigma + delta delta^T
    SpdMatrix scale_latent; // I_r - delta^T scale_total^{-1} delta

    int p() const { return static_cast<int>(mu.size()); }
    int r() const { return static_cast<int>(delta.cols()); }

    /// Conditional mean of the latent skew vector given y.
    Eigen::VectorXd latent_shift(const Eigen::VectorXd& y) const {
        return delta.transpose() * scale_total.solve(Eigen::VectorXd(y - mu));
    }

    /// Squared Mahalanobis distance of y under the total scale.
    double maha_total(const Eigen::VectorXd& y) const {
        return scale_total.inv_quad(y - mu);
    }

    static SkewParams cfusn(Eigen::VectorXd mu, SpdMatrix sigma, Eigen::MatrixXd delta);
    static SkewParams cfust(Eigen::VectorXd mu, SpdMatrix sigma, Eigen::MatrixXd delta, double nu);
    static SkewParams hth(Eigen::VectorXd mu, SpdMatrix sigma, Eigen::MatrixXd delta,
                          double omega, double gig_index);
    static SkewParams smcfusn(Eigen::VectorXd mu, SpdMatrix sigma, Eigen::MatrixXd delta,
                              GigParams mixing);
};

/// Builds the constrained skewness matrix from its free values:
/// Restricted -> p x 1 column, Diagonal -> p x p diagonal.
Eigen::MatrixXd make_special(SkewKind kind, const Eigen::VectorXd& delta_values);

/// Versioned JSON round-trip (matrices row-major, IEEE-754 doubles exact).
std::string skew_params_to_json(const SkewParams& params, int indent = 2);
SkewParams skew_params_from_json(const std::string& text);

} // namespace skewmix
