#include "skewmix/params.hpp"

#include <json.hpp>

#include "skewmix/errors.hpp"

namespace skewmix {

using nlohmann::json;

std::string family_name(SkewFamily family) {
    switch (family) {
        case SkewFamily::Cfusn: return "cfusn";
        case SkewFamily::Cfust: return "cfust";
        case SkewFamily::Hth: return "hth";
        case SkewFamily::Smcfusn: return "smcfusn";
    }
    throw contract_error("family_name: unknown family");
}

SkewFamily family_from_name(const std::string& name) {
    if (name == "cfusn") return SkewFamily::Cfusn;
    if (name == "cfust") return SkewFamily::Cfust;
    if (name == "hth") return SkewFamily::Hth;
    if (name == "smcfusn") return SkewFamily::Smcfusn;
    throw contract_error("unknown family name: " + name);
}

std::string kind_name(SkewKind kind) {
    switch (kind) {
        case SkewKind::Full: return "full";
        case SkewKind::Restricted: return "restricted";
        case SkewKind::Diagonal: return "diagonal";
    }
    throw contract_error("kind_name: unknown kind");
}

SkewKind kind_from_name(const std::string& name) {
    if (name == "full") return SkewKind::Full;
    if (name == "restricted") return SkewKind::Restricted;
    if (name == "diagonal") return SkewKind::Diagonal;
    throw contract_error("unknown kind name: " + name);
}

namespace {

SkewParams build_common(Eigen::VectorXd mu, SpdMatrix sigma, Eigen::MatrixXd delta,
                        SkewFamily family) {
    const int p = static_cast<int>(mu.size());
    if (sigma.dim() != p) throw contract_error("SkewParams: sigma dimension must match mu");
    if (delta.rows() != p) throw contract_error("SkewParams: delta must have p rows");
    if (delta.cols() < 1) throw contract_error("SkewParams: delta must have at least one column");

    SkewParams out;
    out.mu = std::move(mu);
    out.delta = std::move(delta);
    out.family = family;
    out.scale_total = SpdMatrix(sigma.dense() + out.delta * out.delta.transpose());
    const int r = static_cast<int>(out.delta.cols());
    const Eigen::MatrixXd latent = Eigen::MatrixXd::Identity(r, r) -
                                   out.delta.transpose() * out.scale_total.solve(out.delta);
    // symmetrize against roundoff before factorizing
    out.scale_latent = SpdMatrix(((latent + latent.transpose()) / 2.0).eval());
    out.sigma = std::move(sigma);
    return out;
}

} // namespace

SkewParams SkewParams::cfusn(Eigen::VectorXd mu, SpdMatrix sigma, Eigen::MatrixXd delta) {
    return build_common(std::move(mu), std::move(sigma), std::move(delta), SkewFamily::Cfusn);
}

SkewParams SkewParams::cfust(Eigen::VectorXd mu, SpdMatrix sigma, Eigen::MatrixXd delta,
                             double nu) {
    if (!(nu > 0.0)) throw contract_error("SkewParams::cfust: nu must be positive");
    SkewParams out = build_common(std::move(mu), std::move(sigma), std::move(delta), SkewFamily::Cfust);
    out.nu = nu;
    return out;
}

SkewParams SkewParams::hth(Eigen::VectorXd mu, SpdMatrix sigma, Eigen::MatrixXd delta,
                           double omega, double gig_index) {
    if (!(omega > 0.0)) throw contract_error("SkewParams::hth: omega must be positive");
    SkewParams out = build_common(std::move(mu), std::move(sigma), std::move(delta), SkewFamily::Hth);
    out.omega = omega;
    out.gig_index = gig_index;
    return out;
}

SkewParams SkewParams::smcfusn(Eigen::VectorXd mu, SpdMatrix sigma, Eigen::MatrixXd delta,
                               GigParams mixing) {
    SkewParams out = build_common(std::move(mu), std::move(sigma), std::move(delta), SkewFamily::Smcfusn);
    out.mixing = mixing;
    return out;
}

Eigen::MatrixXd make_special(SkewKind kind, const Eigen::VectorXd& delta_values) {
    const int p = static_cast<int>(delta_values.size());
    switch (kind) {
        case SkewKind::Restricted:
            return delta_values;
        case SkewKind::Diagonal: {
            Eigen::MatrixXd d = Eigen::MatrixXd::Zero(p, p);
            d.diagonal() = delta_values;
            return d;
        }
        case SkewKind::Full:
            throw contract_error("make_special: Full kind has no vector parameterization");
    }
    throw contract_error("make_special: unknown kind");
}

namespace {

json matrix_to_json(const Eigen::MatrixXd& m) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) arr.push_back(m(i, j));
    return arr;
}

Eigen::MatrixXd matrix_from_json(const json& arr, int rows, int cols, const char* what) {
    if (!arr.is_array() || static_cast<int>(arr.size()) != rows * cols) {
        throw parse_error(std::string("bad length for ") + what);
    }
    Eigen::MatrixXd m(rows, cols);
    int k = 0;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = arr[k++].get<double>();
    return m;
}

} // namespace

json skew_params_to_json_obj(const SkewParams& sp) {
    json j;
    j["version"] = 1;
    j["family"] = family_name(sp.family);
    j["p"] = sp.p();
    j["r"] = sp.r();
    j["mu"] = matrix_to_json(sp.mu);
    j["sigma"] = matrix_to_json(sp.sigma.dense());
    j["delta"] = matrix_to_json(sp.delta);
    switch (sp.family) {
        case SkewFamily::Cfusn: break;
        case SkewFamily::Cfust: j["nu"] = sp.nu; break;
        case SkewFamily::Hth:
            j["omega"] = sp.omega;
            j["lambda"] = sp.gig_index;
            break;
        case SkewFamily::Smcfusn:
            j["mixing"] = {{"psi", sp.mixing->psi}, {"chi", sp.mixing->chi}, {"lambda", sp.mixing->lambda}};
            break;
    }
    return j;
}

SkewParams skew_params_from_json_obj(const json& j) {
    for (const char* key : {"family", "p", "r", "mu", "sigma", "delta"}) {
        if (!j.contains(key)) throw parse_error(std::string("params missing field: ") + key);
    }
    const int p = j.at("p").get<int>();
    const int r = j.at("r").get<int>();
    if (p < 1 || r < 1) throw parse_error("params: p and r must be >= 1");
    Eigen::VectorXd mu = matrix_from_json(j.at("mu"), p, 1, "mu");
    SpdMatrix sigma(matrix_from_json(j.at("sigma"), p, p, "sigma"));
    Eigen::MatrixXd delta = matrix_from_json(j.at("delta"), p, r, "delta");

    const SkewFamily family = family_from_name(j.at("family").get<std::string>());
    switch (family) {
        case SkewFamily::Cfusn:
            return SkewParams::cfusn(std::move(mu), std::move(sigma), std::move(delta));
        case SkewFamily::Cfust:
            if (!j.contains("nu")) throw parse_error("cfust params missing nu");
            return SkewParams::cfust(std::move(mu), std::move(sigma), std::move(delta),
                                     j.at("nu").get<double>());
        case SkewFamily::Hth:
            if (!j.contains("omega") || !j.contains("lambda")) {
                throw parse_error("hth params missing omega/lambda");
            }
            return SkewParams::hth(std::move(mu), std::move(sigma), std::move(delta),
                                   j.at("omega").get<double>(), j.at("lambda").get<double>());
        case SkewFamily::Smcfusn: {
            if (!j.contains("mixing")) throw parse_error("smcfusn params missing mixing");
            const json& m = j.at("mixing");
            return SkewParams::smcfusn(std::move(mu), std::move(sigma), std::move(delta),
                                       GigParams(m.at("psi").get<double>(), m.at("chi").get<double>(),
                                                 m.at("lambda").get<double>()));
        }
    }
    throw parse_error("params: unknown family");
}

std::string skew_params_to_json(const SkewParams& params, int indent) {
    return skew_params_to_json_obj(params).dump(indent);
}

SkewParams skew_params_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
    return skew_params_from_json_obj(j);
}

} // namespace skewmix
