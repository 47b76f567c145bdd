#include "skewmix/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "skewmix/errors.hpp"
#include "skewmix/mvt.hpp"
#include "skewmix/parallel.hpp"
#include "skewmix/special.hpp"
#include "skewmix/truncmom.hpp"
#include "json_io.hpp"

namespace skewmix {

namespace {

constexpr double kLog2 = 0.6931471805599453094;
constexpr double kLog2Pi = 1.8378770664093454836;
constexpr double kWeightFloor = 1e-6;       // degenerate-component guard
constexpr double kMonotoneSlack = 1e-8;     // relative slack per EM step
constexpr double kLegacyDeltaConstant = 4.0;

// ---- per-observation statistics needed by the E- and M-steps -------------

struct EstepBuffers {
    Eigen::MatrixXd logf;        // n x g
    std::vector<Eigen::VectorXd> a;       // per comp: n (E[1/w])
    std::vector<Eigen::VectorXd> elogw;   // per comp: n
    std::vector<Eigen::MatrixXd> b;       // per comp: n x r
    std::vector<Eigen::MatrixXd> c;       // per comp: n x r^2 (row-major blocks)

    void resize(int n, int g, int r, bool want_moments) {
        logf.resize(n, g);
        if (!want_moments) return;
        a.assign(g, Eigen::VectorXd::Zero(n));
        elogw.assign(g, Eigen::VectorXd::Zero(n));
        b.assign(g, Eigen::MatrixXd::Zero(n, r));
        c.assign(g, Eigen::MatrixXd::Zero(n, r * r));
    }
};

struct ComponentContext {
    const SkewParams* sp;
    double log_sym_norm;              // family const: log phi / log t normalization
    std::vector<double> ig_table;     // r >= 3 CFUST quantile table
    int qmc_points = 512;
};

ComponentContext make_context(const SkewParams& sp, int qmc_points) {
    ComponentContext ctx;
    ctx.sp = &sp;
    ctx.qmc_points = qmc_points;
    const int p = sp.p();
    if (sp.family == SkewFamily::Cfusn) {
        ctx.log_sym_norm = -0.5 * (p * kLog2Pi + sp.scale_total.log_det());
    } else {
        const double nu = sp.nu;
        ctx.log_sym_norm = std::lgamma(0.5 * (nu + p)) - std::lgamma(0.5 * nu) -
                           0.5 * p * std::log(nu * 3.14159265358979323846) -
                           0.5 * sp.scale_total.log_det();
        if (sp.r() >= 3) {
            ctx.ig_table = ig_quantile_table(0.5 * (nu + p), qmc_points, 1, sp.r() + 1);
        }
    }
    return ctx;
}

// log density and (optionally) latent moments for one observation
void obs_stats(const ComponentContext& ctx, const Eigen::VectorXd& y, bool want_moments,
               double& logf, double& a, double& elogw, double* b_out, double* c_out) {
    const SkewParams& sp = *ctx.sp;
    const int p = sp.p();
    const int r = sp.r();
    const double maha = sp.maha_total(y);
    const Eigen::VectorXd shift = sp.latent_shift(y);

    if (sp.family == SkewFamily::Cfusn) {
        const auto om = orthant_moments(shift, sp.scale_latent, want_moments, ctx.qmc_points);
        logf = r * kLog2 + ctx.log_sym_norm - 0.5 * maha + om.log_prob;
        a = 1.0;
        elogw = 0.0;
        if (want_moments) {
            for (int i = 0; i < r; ++i) b_out[i] = om.mean[i];
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j) c_out[i * r + j] = om.second(i, j);
        }
        return;
    }

    const double nu = sp.nu;
    const double a_post = 0.5 * (nu + p);
    const double b_post = 0.5 * (nu + maha);
    const auto stats = scale_mixture_latent_stats(shift, a_post, b_post, sp.scale_latent,
                                                  want_moments,
                                                  ctx.ig_table.empty() ? nullptr : &ctx.ig_table,
                                                  ctx.qmc_points, 1);
    const double log_t = ctx.log_sym_norm - a_post * std::log1p(maha / nu);
    logf = r * kLog2 + log_t + stats.log_skew_factor;
    a = stats.e_inv_w;
    elogw = stats.e_log_w;
    if (want_moments) {
        for (int i = 0; i < r; ++i) b_out[i] = stats.e_u_inv_w[i];
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) c_out[i * r + j] = stats.e_uu_inv_w(i, j);
    }
}

// E-step over all observations and components; returns loglik
double run_estep(const DataMatrix& data, const MixtureModel& model, bool want_moments,
                 int qmc_points, EstepBuffers& buf, Eigen::MatrixXd& resp) {
    const int n = data.n();
    const int g = model.g();
    const int r = model.r();
    buf.resize(n, g, r, want_moments);

    std::vector<ComponentContext> ctx;
    ctx.reserve(g);
    for (const auto& comp : model.components) ctx.push_back(make_context(comp, qmc_points));

    Eigen::VectorXd log_w(g);
    for (int h = 0; h < g; ++h) log_w[h] = std::log(model.weights[h]);

    parallel_for(n, [&](int i) {
        const Eigen::VectorXd y = data.values.row(i).transpose();
        for (int h = 0; h < g; ++h) {
            double lf, a, lw;
            obs_stats(ctx[h], y, want_moments, lf, a, lw,
                      want_moments ? buf.b[h].row(i).data() : nullptr,
                      want_moments ? buf.c[h].row(i).data() : nullptr);
            buf.logf(i, h) = lf;
            if (want_moments) {
                buf.a[h][i] = a;
                buf.elogw[h][i] = lw;
            }
        }
    });

    // responsibilities + loglik in log space (sequential: bit-stable)
    resp.resize(n, g);
    double loglik = 0.0;
    for (int i = 0; i < n; ++i) {
        double m = -std::numeric_limits<double>::infinity();
        for (int h = 0; h < g; ++h) m = std::max(m, log_w[h] + buf.logf(i, h));
        if (!std::isfinite(m)) {
            throw numeric_error("e_step: every component underflowed at observation " +
                                std::to_string(i));
        }
        double s = 0.0;
        for (int h = 0; h < g; ++h) s += std::exp(log_w[h] + buf.logf(i, h) - m);
        for (int h = 0; h < g; ++h) resp(i, h) = std::exp(log_w[h] + buf.logf(i, h) - m) / s;
        loglik += m + std::log(s);
    }
    return loglik;
}

// ---- M-step ---------------------------------------------------------------

// sufficient statistics for one component
struct CompStats {
    double t = 0.0;                 // sum of responsibilities
    double sa = 0.0;                // sum tau a
    double s_nu = 0.0;              // sum tau (elogw + a)
    Eigen::VectorXd sy;             // sum tau a y          (p)
    Eigen::VectorXd sb;             // sum tau b            (r)
    Eigen::MatrixXd syy;            // sum tau a y y^T      (p x p)
    Eigen::MatrixXd syb;            // sum tau y b^T        (p x r)
    Eigen::MatrixXd cbar;           // sum tau C            (r x r)
};

CompStats gather_stats(const DataMatrix& data, const EstepBuffers& buf,
                       const Eigen::MatrixXd& resp, int h, int p, int r) {
    const int n = data.n();
    CompStats st;
    st.sy = Eigen::VectorXd::Zero(p);
    st.sb = Eigen::VectorXd::Zero(r);
    st.syy = Eigen::MatrixXd::Zero(p, p);
    st.syb = Eigen::MatrixXd::Zero(p, r);
    st.cbar = Eigen::MatrixXd::Zero(r, r);
    for (int i = 0; i < n; ++i) {
        const double tau = resp(i, h);
        if (tau <= 0.0) continue;
        const double a = buf.a[h][i];
        const Eigen::VectorXd y = data.values.row(i).transpose();
        const Eigen::VectorXd b = buf.b[h].row(i).transpose();
        st.t += tau;
        st.sa += tau * a;
        st.s_nu += tau * (buf.elogw[h][i] + a);
        st.sy += tau * a * y;
        st.sb += tau * b;
        st.syy += tau * a * y * y.transpose();
        st.syb += tau * y * b.transpose();
        for (int ii = 0; ii < r; ++ii)
            for (int jj = 0; jj < r; ++jj) st.cbar(ii, jj) += tau * buf.c[h](i, ii * r + jj);
    }
    return st;
}

double solve_nu(double target, const std::pair<double, double>& bounds) {
    // root of log(nu/2) + 1 - digamma(nu/2) - target in log nu
    auto f = [&](double nu) { return std::log(0.5 * nu) + 1.0 - digamma(0.5 * nu) - target; };
    double lo = bounds.first, hi = bounds.second;
    double flo = f(lo), fhi = f(hi);
    if (flo <= 0.0) return lo;  // target too large even at the left bound
    if (fhi >= 0.0) return hi;  // loglik flat in nu beyond the right bound
    for (int it = 0; it < 200; ++it) {
        const double mid = std::sqrt(lo * hi);
        if (f(mid) > 0.0) lo = mid; else hi = mid;
        if (hi / lo < 1.0 + 1e-12) break;
    }
    return std::sqrt(lo * hi);
}

// one ECM pass for a component; throws not_positive_definite_error on an
// unrecoverable scale update
SkewParams update_component(const SkewParams& old, const CompStats& st, SkewKind kind,
                            const std::pair<double, double>& nu_bounds) {
    const int p = old.p();
    const int r = old.r();

    Eigen::VectorXd mu;
    Eigen::MatrixXd delta;

    if (kind == SkewKind::Diagonal) {
        // conditional updates: mu given delta, then diagonal delta given mu
        mu = (st.sy - old.delta * st.sb) / st.sa;
        const Eigen::MatrixXd syb_c = st.syb - mu * st.sb.transpose();
        const Eigen::MatrixXd sigma_inv = old.sigma.solve(Eigen::MatrixXd(Eigen::MatrixXd::Identity(p, p)));
        const Eigen::MatrixXd lhs = sigma_inv.cwiseProduct(st.cbar.transpose());
        const Eigen::VectorXd rhs = (sigma_inv * syb_c).diagonal();
        Eigen::VectorXd diag = lhs.ldlt().solve(rhs);
        delta = Eigen::MatrixXd::Zero(p, r);
        delta.diagonal() = diag;
        mu = (st.sy - delta * st.sb) / st.sa;
    } else {
        // joint (mu, delta) solve: B G = RHS with G the latent second moments
        Eigen::MatrixXd G(1 + r, 1 + r);
        G(0, 0) = st.sa;
        G.block(0, 1, 1, r) = st.sb.transpose();
        G.block(1, 0, r, 1) = st.sb;
        G.block(1, 1, r, r) = st.cbar;
        Eigen::MatrixXd rhs(p, 1 + r);
        rhs.col(0) = st.sy;
        rhs.block(0, 1, p, r) = st.syb;
        const Eigen::MatrixXd B = G.ldlt().solve(rhs.transpose()).transpose();
        mu = B.col(0);
        delta = B.block(0, 1, p, r);
    }

    // scale update at the new (mu, delta)
    const Eigen::MatrixXd syy_c = st.syy - st.sy * mu.transpose() - mu * st.sy.transpose() +
                                  st.sa * mu * mu.transpose();
    const Eigen::MatrixXd syb_c = st.syb - mu * st.sb.transpose();
    Eigen::MatrixXd scale = (syy_c - syb_c * delta.transpose() - delta * syb_c.transpose() +
                             delta * st.cbar * delta.transpose()) / st.t;
    scale = ((scale + scale.transpose()) / 2.0).eval();

    SpdMatrix sigma;
    try {
        sigma = SpdMatrix(scale);
    } catch (const not_positive_definite_error&) {
        // jitter once, then give up on this start
        scale.diagonal().array() += spd_jitter(scale);
        sigma = SpdMatrix(scale); // may rethrow
    }

    if (old.family == SkewFamily::Cfusn) {
        return SkewParams::cfusn(mu, sigma, delta);
    }
    const double nu = solve_nu(st.s_nu / st.t, nu_bounds);
    return SkewParams::cfust(mu, sigma, delta, nu);
}

// ---- initialization -------------------------------------------------------

Eigen::VectorXd cluster_delta_values(const Eigen::MatrixXd& values, const std::vector<int>& labels,
                                     int h, const Eigen::VectorXd& mean) {
    const int p = static_cast<int>(values.cols());
    Eigen::VectorXd m2 = Eigen::VectorXd::Zero(p);
    Eigen::VectorXd m3 = Eigen::VectorXd::Zero(p);
    int count = 0;
    for (int i = 0; i < values.rows(); ++i) {
        if (labels[i] != h) continue;
        ++count;
        const Eigen::ArrayXd d = values.row(i).transpose().array() - mean.array();
        m2 += (d * d).matrix();
        m3 += (d * d * d).matrix();
    }
    Eigen::VectorXd out(p);
    for (int j = 0; j < p; ++j) {
        const double sd = std::sqrt(m2[j] / std::max(count - 1, 1));
        const double sign = (m3[j] > 0.0) ? 1.0 : (m3[j] < 0.0 ? -1.0 : 0.0);
        out[j] = sign * sd;
    }
    return out;
}

MixtureModel model_from_partition(const DataMatrix& data, const std::vector<int>& labels, int g,
                                  SkewFamily family, SkewKind kind, bool legacy_constant) {
    const int n = data.n();
    const int p = data.p();
    const int r = (kind == SkewKind::Restricted) ? 1 : p;

    MixtureModel model;
    model.weights.resize(g);
    for (int h = 0; h < g; ++h) {
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if (labels[i] == h) idx.push_back(i);
        if (idx.empty()) throw numeric_error("initialize: empty cluster");
        model.weights[h] = static_cast<double>(idx.size()) / n;

        Eigen::VectorXd mean = Eigen::VectorXd::Zero(p);
        for (int i : idx) mean += data.values.row(i).transpose();
        mean /= static_cast<double>(idx.size());

        Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(p, p);
        for (int i : idx) {
            const Eigen::VectorXd d = data.values.row(i).transpose() - mean;
            cov += d * d.transpose();
        }
        cov /= std::max<double>(idx.size() - 1, 1.0);

        SpdMatrix sigma;
        try {
            sigma = SpdMatrix(cov);
        } catch (const not_positive_definite_error&) {
            cov.diagonal().array() += std::max(spd_jitter(cov), 1e-8);
            sigma = SpdMatrix(cov);
        }

        Eigen::MatrixXd delta;
        if (legacy_constant) {
            delta = Eigen::MatrixXd::Constant(p, r, kLegacyDeltaConstant);
            if (kind == SkewKind::Diagonal) {
                delta = Eigen::MatrixXd(Eigen::VectorXd::Constant(p, kLegacyDeltaConstant).asDiagonal());
            }
        } else {
            const Eigen::VectorXd dv = cluster_delta_values(data.values, labels, h, mean);
            delta = (kind == SkewKind::Restricted) ? Eigen::MatrixXd(dv)
                                                   : Eigen::MatrixXd(dv.asDiagonal());
        }

        if (family == SkewFamily::Cfusn) {
            model.components.push_back(SkewParams::cfusn(mean, sigma, delta));
        } else {
            model.components.push_back(SkewParams::cfust(mean, sigma, delta, 40.0));
        }
    }
    return model;
}

// plain Gaussian mixture EM used by the NormalMixture strategy
std::vector<int> gaussian_mixture_partition(Rng& rng, const Eigen::MatrixXd& values, int g) {
    const int n = static_cast<int>(values.rows());
    const int p = static_cast<int>(values.cols());
    std::vector<int> labels = kmeans_partition(rng, values, g);

    Eigen::VectorXd weights(g);
    std::vector<Eigen::VectorXd> means(g);
    std::vector<SpdMatrix> covs(g);
    auto refresh = [&](const std::vector<int>& lab) {
        for (int h = 0; h < g; ++h) {
            int cnt = 0;
            Eigen::VectorXd m = Eigen::VectorXd::Zero(p);
            for (int i = 0; i < n; ++i)
                if (lab[i] == h) { m += values.row(i).transpose(); ++cnt; }
            if (cnt == 0) throw numeric_error("normal-mixture init: empty cluster");
            m /= cnt;
            Eigen::MatrixXd c = Eigen::MatrixXd::Zero(p, p);
            for (int i = 0; i < n; ++i)
                if (lab[i] == h) {
                    const Eigen::VectorXd d = values.row(i).transpose() - m;
                    c += d * d.transpose();
                }
            c /= std::max(cnt - 1, 1);
            c.diagonal().array() += std::max(spd_jitter(c), 1e-10);
            weights[h] = static_cast<double>(cnt) / n;
            means[h] = m;
            covs[h] = SpdMatrix(c);
        }
    };
    refresh(labels);

    Eigen::MatrixXd resp(n, g);
    double prev = -std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < 100; ++iter) {
        double loglik = 0.0;
        for (int i = 0; i < n; ++i) {
            Eigen::VectorXd lf(g);
            for (int h = 0; h < g; ++h) {
                const Eigen::VectorXd y = values.row(i).transpose();
                lf[h] = std::log(weights[h]) -
                        0.5 * (p * kLog2Pi + covs[h].log_det() + covs[h].inv_quad(y - means[h]));
            }
            const double m = lf.maxCoeff();
            const double s = (lf.array() - m).exp().sum();
            resp.row(i) = ((lf.array() - m).exp() / s).transpose();
            loglik += m + std::log(s);
        }
        // closed-form Gaussian M-step
        for (int h = 0; h < g; ++h) {
            const double t = resp.col(h).sum();
            weights[h] = t / n;
            Eigen::VectorXd m = (resp.col(h).transpose() * values).transpose() / t;
            Eigen::MatrixXd c = Eigen::MatrixXd::Zero(p, p);
            for (int i = 0; i < n; ++i) {
                const Eigen::VectorXd d = values.row(i).transpose() - m;
                c += resp(i, h) * d * d.transpose();
            }
            c /= t;
            c.diagonal().array() += std::max(spd_jitter(c), 1e-10);
            means[h] = m;
            covs[h] = SpdMatrix(c);
        }
        if (std::fabs(loglik - prev) < 1e-8 * (1.0 + std::fabs(loglik))) break;
        prev = loglik;
    }
    for (int i = 0; i < n; ++i) {
        int best = 0;
        for (int h = 1; h < g; ++h)
            if (resp(i, h) > resp(i, best)) best = h;
        labels[i] = best;
    }
    return labels;
}

} // namespace

void MixtureModel::validate() const {
    if (components.empty()) throw contract_error("MixtureModel: no components");
    if (weights.size() != g()) throw contract_error("MixtureModel: weights/components mismatch");
    if (std::fabs(weights.sum() - 1.0) > 1e-12) {
        throw contract_error("MixtureModel: weights must sum to 1");
    }
    for (int h = 0; h < g(); ++h) {
        if (weights[h] < 1e-12) throw contract_error("MixtureModel: weight below 1e-12");
        if (components[h].p() != p() || components[h].r() != r() ||
            components[h].family != family()) {
            throw contract_error("MixtureModel: components must share p, r and family");
        }
    }
}

std::string init_name(InitStrategy init) {
    switch (init) {
        case InitStrategy::KMeans: return "kmeans";
        case InitStrategy::NormalMixture: return "normal";
        case InitStrategy::RandomPartition: return "random";
        case InitStrategy::LegacyConstant: return "legacy-constant";
    }
    throw contract_error("init_name: unknown strategy");
}

InitStrategy init_from_name(const std::string& name) {
    if (name == "kmeans") return InitStrategy::KMeans;
    if (name == "normal") return InitStrategy::NormalMixture;
    if (name == "random") return InitStrategy::RandomPartition;
    if (name == "legacy-constant") return InitStrategy::LegacyConstant;
    throw contract_error("unknown init strategy: " + name);
}

std::vector<int> kmeans_partition(Rng& rng, const Eigen::MatrixXd& values, int g) {
    const int n = static_cast<int>(values.rows());
    if (g < 1 || g > n) throw contract_error("kmeans_partition: need 1 <= g <= n");

    // kmeans++ seeding
    std::vector<Eigen::VectorXd> centers;
    centers.push_back(values.row(static_cast<int>(rng.below(n))).transpose());
    Eigen::VectorXd dist2 = (values.rowwise() - centers[0].transpose()).rowwise().squaredNorm();
    while (static_cast<int>(centers.size()) < g) {
        const double total = dist2.sum();
        double u = rng.uniform() * total;
        int pick = n - 1;
        for (int i = 0; i < n; ++i) {
            u -= dist2[i];
            if (u <= 0.0) { pick = i; break; }
        }
        centers.push_back(values.row(pick).transpose());
        for (int i = 0; i < n; ++i) {
            const double d = (values.row(i).transpose() - centers.back()).squaredNorm();
            dist2[i] = std::min(dist2[i], d);
        }
    }

    std::vector<int> labels(n, 0);
    for (int iter = 0; iter < 100; ++iter) {
        bool changed = false;
        for (int i = 0; i < n; ++i) {
            int best = 0;
            double bd = (values.row(i).transpose() - centers[0]).squaredNorm();
            for (int h = 1; h < g; ++h) {
                const double d = (values.row(i).transpose() - centers[h]).squaredNorm();
                if (d < bd) { bd = d; best = h; }
            }
            if (labels[i] != best) { labels[i] = best; changed = true; }
        }
        if (!changed && iter > 0) break;
        for (int h = 0; h < g; ++h) {
            Eigen::VectorXd m = Eigen::VectorXd::Zero(values.cols());
            int cnt = 0;
            for (int i = 0; i < n; ++i)
                if (labels[i] == h) { m += values.row(i).transpose(); ++cnt; }
            if (cnt > 0) centers[h] = m / cnt;
        }
    }
    return labels;
}

MixtureModel initialize(const DataMatrix& data, int g, SkewFamily family, SkewKind kind,
                        const FitOptions& opts) {
    if (family != SkewFamily::Cfusn && family != SkewFamily::Cfust) {
        throw contract_error("initialize: mixture fitting supports cfusn and cfust only");
    }
    const int n = data.n();
    const int p = data.p();
    if (n < g * (p + 2)) {
        throw contract_error("initialize: need n >= g (p + 2) observations");
    }

    Rng rng(opts.seed);
    std::string last_error;
    for (int attempt = 0; attempt < 10; ++attempt) {
        try {
            std::vector<int> labels;
            switch (opts.init) {
                case InitStrategy::KMeans:
                case InitStrategy::LegacyConstant:
                    labels = kmeans_partition(rng, data.values, g);
                    break;
                case InitStrategy::NormalMixture:
                    labels = gaussian_mixture_partition(rng, data.values, g);
                    break;
                case InitStrategy::RandomPartition: {
                    labels.resize(n);
                    for (int i = 0; i < n; ++i) labels[i] = static_cast<int>(rng.below(g));
                    break;
                }
            }
            return model_from_partition(data, labels, g, family, kind,
                                        opts.init == InitStrategy::LegacyConstant);
        } catch (const std::exception& e) {
            last_error = e.what();
        }
    }
    throw contract_error("initialize: no valid partition after 10 attempts (" + last_error + ")");
}

std::pair<Eigen::MatrixXd, double> e_step(const DataMatrix& data, const MixtureModel& model) {
    model.validate();
    if (data.p() != model.p()) throw contract_error("e_step: data/model dimension mismatch");
    EstepBuffers buf;
    Eigen::MatrixXd resp;
    const double loglik = run_estep(data, model, false, 512, buf, resp);
    return {std::move(resp), loglik};
}

namespace {

FitReport run_single_start(const DataMatrix& data, int g, SkewFamily family, SkewKind kind,
                           const FitOptions& opts, std::uint64_t start_seed) {
    FitReport report;
    report.init_used = opts.init;
    report.kind = kind;

    FitOptions start_opts = opts;
    start_opts.seed = start_seed;
    MixtureModel model = initialize(data, g, family, kind, start_opts);

    EstepBuffers buf;
    Eigen::MatrixXd resp;
    double loglik = run_estep(data, model, true, opts.qmc_points, buf, resp);
    report.loglik_trace.push_back(loglik);
    report.model = model;
    report.responsibilities = resp;

    int strikes = 0;
    for (int iter = 1; iter <= opts.max_iter; ++iter) {
        // degenerate component guard
        Eigen::VectorXd counts = resp.colwise().sum();
        if (counts.minCoeff() / data.n() < kWeightFloor) {
            report.converged = false;
            report.stop_reason = "component weight collapsed below 1e-6";
            report.n_iter = iter - 1;
            return report;
        }

        MixtureModel next = model;
        next.weights = counts / data.n();
        bool scale_failed = false;
        for (int h = 0; h < g; ++h) {
            const CompStats st = gather_stats(data, buf, resp, h, data.p(), model.r());
            try {
                next.components[h] = update_component(model.components[h], st, kind, opts.nu_bounds);
            } catch (const not_positive_definite_error&) {
                scale_failed = true;
                break;
            }
        }
        if (scale_failed) {
            report.converged = false;
            report.stop_reason = "scale update lost positive definiteness";
            report.n_iter = iter - 1;
            return report;
        }

        EstepBuffers next_buf;
        Eigen::MatrixXd next_resp;
        const double next_loglik = run_estep(data, next, true, opts.qmc_points, next_buf, next_resp);

        if (next_loglik < loglik - kMonotoneSlack * std::fabs(loglik)) {
            // numerically non-increasing step (possible for the lattice-based
            // moments near a fixed point): keep the previous iterate
            report.converged = true;
            report.stop_reason = "stopped before a non-increasing step";
            report.n_iter = iter - 1;
            return report;
        }

        const double rel = std::fabs(next_loglik - loglik) / std::max(1.0, std::fabs(next_loglik));
        model = std::move(next);
        buf = std::move(next_buf);
        resp = std::move(next_resp);
        loglik = next_loglik;
        report.loglik_trace.push_back(loglik);
        report.model = model;
        report.responsibilities = resp;
        report.n_iter = iter;

        strikes = (rel < opts.tol_loglik) ? strikes + 1 : 0;
        if (strikes >= 3) {
            report.converged = true;
            report.stop_reason = "relative loglik change below tolerance";
            return report;
        }
    }
    report.converged = false;
    report.stop_reason = "max_iter reached";
    return report;
}

} // namespace

FitReport fit_em(const DataMatrix& data, int g, SkewFamily family, SkewKind kind,
                 const FitOptions& opts) {
    if (opts.max_iter < 1 || opts.n_starts < 1) {
        throw contract_error("fit_em: max_iter and n_starts must be >= 1");
    }
    Rng seeder(opts.seed);
    std::vector<std::uint64_t> seeds;
    seeds.push_back(opts.seed);
    for (int s = 1; s < opts.n_starts; ++s) {
        seeds.push_back(opts.seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(s));
    }

    FitReport best;
    bool have_best = false;
    std::string first_error;
    for (int s = 0; s < opts.n_starts; ++s) {
        FitReport rep;
        try {
            rep = run_single_start(data, g, family, kind, opts, seeds[s]);
        } catch (const std::exception& e) {
            if (first_error.empty()) first_error = e.what();
            continue;
        }
        const bool better =
            !have_best ||
            (rep.converged && !best.converged) ||
            (rep.converged == best.converged && rep.final_loglik() > best.final_loglik());
        if (better) {
            best = std::move(rep);
            have_best = true;
        }
    }
    if (!have_best) {
        throw numeric_error("fit_em: every start failed (" + first_error + ")");
    }
    best.bic = bic(best, data.n());
    return best;
}

int count_free_params(SkewFamily family, SkewKind kind, int p, int r, int g) {
    if (p < 1 || r < 1 || g < 1) throw contract_error("count_free_params: bad shapes");
    if (kind == SkewKind::Restricted && r != 1) {
        throw contract_error("count_free_params: Restricted requires r = 1");
    }
    if (kind == SkewKind::Diagonal && r != p) {
        throw contract_error("count_free_params: Diagonal requires r = p");
    }
    int delta_params = 0;
    switch (kind) {
        case SkewKind::Full: delta_params = p * r; break;
        case SkewKind::Restricted: delta_params = p; break;
        case SkewKind::Diagonal: delta_params = p; break;
    }
    const int tail = (family == SkewFamily::Cfust) ? 1 : 0;
    const int per_component = p + p * (p + 1) / 2 + delta_params + tail;
    return g * per_component + (g - 1);
}

double bic(const FitReport& report, int n) {
    if (n < 1) throw contract_error("bic: n must be >= 1");
    const int d = count_free_params(report.model.family(), report.kind, report.model.p(),
                                    report.model.r(), report.model.g());
    return -2.0 * report.final_loglik() + d * std::log(static_cast<double>(n));
}

MixtureModel destandardize_model(const MixtureModel& model, const Eigen::VectorXd& means,
                                 const Eigen::VectorXd& sds) {
    if (means.size() != model.p() || sds.size() != model.p()) {
        throw contract_error("destandardize_model: dimension mismatch");
    }
    MixtureModel out;
    out.weights = model.weights;
    const Eigen::MatrixXd d = sds.asDiagonal();
    for (const auto& comp : model.components) {
        const Eigen::VectorXd mu = means + (sds.array() * comp.mu.array()).matrix();
        const SpdMatrix sigma(d * comp.sigma.dense() * d);
        const Eigen::MatrixXd delta = d * comp.delta;
        switch (comp.family) {
            case SkewFamily::Cfusn:
                out.components.push_back(SkewParams::cfusn(mu, sigma, delta));
                break;
            case SkewFamily::Cfust:
                out.components.push_back(SkewParams::cfust(mu, sigma, delta, comp.nu));
                break;
            default:
                throw contract_error("destandardize_model: unsupported family");
        }
    }
    return out;
}

// ---- JSON -----------------------------------------------------------------

namespace {

nlohmann::json mixture_to_json_obj(const MixtureModel& model) {
    nlohmann::json j;
    j["version"] = 1;
    j["family"] = family_name(model.family());
    j["p"] = model.p();
    j["r"] = model.r();
    j["g"] = model.g();
    j["weights"] = std::vector<double>(model.weights.data(), model.weights.data() + model.g());
    j["components"] = nlohmann::json::array();
    for (const auto& comp : model.components) j["components"].push_back(skew_params_to_json_obj(comp));
    return j;
}

MixtureModel mixture_from_json_obj(const nlohmann::json& j) {
    MixtureModel model;
    if (!j.contains("weights") || !j.contains("components")) {
        throw parse_error("mixture JSON missing weights/components");
    }
    const auto w = j.at("weights").get<std::vector<double>>();
    model.weights = Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size()));
    for (const auto& cj : j.at("components")) {
        model.components.push_back(skew_params_from_json_obj(cj));
    }
    model.validate();
    return model;
}

} // namespace

std::string mixture_to_json(const MixtureModel& model, int indent) {
    return mixture_to_json_obj(model).dump(indent);
}

MixtureModel mixture_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
    return mixture_from_json_obj(j);
}

std::string fit_report_to_json(const FitReport& report, bool include_responsibilities, int indent) {
    nlohmann::json j;
    j["model"] = nlohmann::json::parse(mixture_to_json(report.model, 0));
    j["loglik_trace"] = report.loglik_trace;
    j["bic"] = report.bic;
    j["converged"] = report.converged;
    j["n_iter"] = report.n_iter;
    j["init_used"] = init_name(report.init_used);
    j["kind"] = kind_name(report.kind);
    j["stop_reason"] = report.stop_reason;
    if (include_responsibilities) {
        nlohmann::json rows = nlohmann::json::array();
        for (int i = 0; i < report.responsibilities.rows(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (int h = 0; h < report.responsibilities.cols(); ++h) {
                row.push_back(report.responsibilities(i, h));
            }
            rows.push_back(std::move(row));
        }
        j["responsibilities"] = std::move(rows);
    }
    return j.dump(indent);
}

} // namespace skewmix
