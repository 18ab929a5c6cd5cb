#pragma once

// Two-factor CES production algebra: evaluation, isoquant inversion,
// marginal rate of technical substitution, first-order-condition prices,
// and share-consistent calibration of initial quantities.

#include <cmath>
#include <stdexcept>
#include <string>

namespace entrans::ces {

// Below this |rho| the CES form is evaluated through its Cobb-Douglas limit.
inline constexpr double kCobbDouglasRhoEps = 1e-7;

/// Share parameter alpha in (0,1) and substitution parameter rho in (-1, inf).
/// The elasticity of substitution is sigma = 1/(1+rho).
struct CesParams {
    double alpha{0.5};
    double rho{0.0};

    double sigma() const { return 1.0 / (1.0 + rho); }

    void validate() const {
        if (!(alpha > 0.0 && alpha < 1.0))
            throw std::domain_error("CesParams: alpha must lie in (0,1), got " +
                                    std::to_string(alpha));
        if (!(rho > -1.0) || !std::isfinite(rho))
            throw std::domain_error("CesParams: rho must be finite and > -1, got " +
                                    std::to_string(rho));
    }
};

/// One point in factor space. Quantities share an arbitrary energy unit.
struct FactorPoint {
    double fossil{0.0};
    double renewable{0.0};
};

struct PricePair {
    double p_fossil{0.0};
    double p_renewable{0.0};

    void validate() const {
        if (!(p_fossil > 0.0) || !(p_renewable > 0.0))
            throw std::domain_error("PricePair: prices must be strictly positive");
    }
};

/// Thrown when no renewable quantity can reach the target output at the
/// given fossil quantity (the residual of the inverted CES form is <= 0).
class InfeasibleIsoquant : public std::runtime_error {
public:
    InfeasibleIsoquant(double fossil, double target_output, double rho)
        : std::runtime_error("infeasible isoquant: no R > 0 reaches Y=" +
                             std::to_string(target_output) + " at F=" +
                             std::to_string(fossil) + " (rho=" + std::to_string(rho) + ")"),
          fossil_(fossil), target_output_(target_output), rho_(rho) {}

    double fossil() const { return fossil_; }
    double target_output() const { return target_output_; }
    double rho() const { return rho_; }

private:
    double fossil_;
    double target_output_;
    double rho_;
};

namespace detail {
inline void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw std::domain_error(std::string(name) + " must be strictly positive, got " +
                                std::to_string(v));
}
}  // namespace detail

/// Y = [alpha * F^(-rho) + (1-alpha) * R^(-rho)]^(-1/rho),
/// with the Cobb-Douglas limit F^alpha * R^(1-alpha) taken for |rho| < eps.
/// Homogeneous of degree 1 in (F, R).
inline double ces_output(const CesParams& p, const FactorPoint& pt) {
    p.validate();
    detail::require_positive(pt.fossil, "fossil");
    detail::require_positive(pt.renewable, "renewable");
    if (std::abs(p.rho) < kCobbDouglasRhoEps)
        return std::pow(pt.fossil, p.alpha) * std::pow(pt.renewable, 1.0 - p.alpha);
    const double bracket = p.alpha * std::pow(pt.fossil, -p.rho) +
                           (1.0 - p.alpha) * std::pow(pt.renewable, -p.rho);
    return std::pow(bracket, -1.0 / p.rho);
}

/// Solves the isoquant for R: the renewable quantity that, together with the
/// given fossil quantity, produces exactly target_output.
/// Closed form R = [(Y^(-rho) - alpha*F^(-rho)) / (1-alpha)]^(-1/rho).
inline double invert_renewable(const CesParams& p, double target_output, double fossil) {
    p.validate();
    detail::require_positive(target_output, "target_output");
    detail::require_positive(fossil, "fossil");
    if (std::abs(p.rho) < kCobbDouglasRhoEps)
        return std::pow(target_output / std::pow(fossil, p.alpha), 1.0 / (1.0 - p.alpha));
    const double residual = (std::pow(target_output, -p.rho) -
                             p.alpha * std::pow(fossil, -p.rho)) /
                            (1.0 - p.alpha);
    if (!(residual > 0.0))
        throw InfeasibleIsoquant(fossil, target_output, p.rho);
    return std::pow(residual, -1.0 / p.rho);
}

/// Magnitude of the isoquant slope: (alpha/(1-alpha)) * (R/F)^(1+rho).
/// The slope itself carries a minus sign (R falls as F rises along an isoquant).
inline double mrts(const CesParams& p, const FactorPoint& pt) {
    p.validate();
    detail::require_positive(pt.fossil, "fossil");
    detail::require_positive(pt.renewable, "renewable");
    return p.alpha / (1.0 - p.alpha) *
           std::pow(pt.renewable / pt.fossil, 1.0 + p.rho);
}

/// First-order-condition price ratio P_F/P_R = (alpha/(1-alpha)) * (F/R)^(-rho-1).
/// Algebraically identical to mrts at the same point.
inline double relative_price(const CesParams& p, const FactorPoint& pt) {
    p.validate();
    detail::require_positive(pt.fossil, "fossil");
    detail::require_positive(pt.renewable, "renewable");
    return p.alpha / (1.0 - p.alpha) *
           std::pow(pt.fossil / pt.renewable, -p.rho - 1.0);
}

/// Inverse of relative_price: F/R = ((1-alpha)/alpha * P_F/P_R)^(-1/(1+rho)).
inline double quantity_ratio_from_prices(const CesParams& p, const PricePair& prices) {
    p.validate();
    prices.validate();
    return std::pow((1.0 - p.alpha) / p.alpha * prices.p_fossil / prices.p_renewable,
                    -1.0 / (1.0 + p.rho));
}

/// Price elasticity of substitution of F with respect to R: -1/(1+rho) = -sigma.
inline double price_elasticity(const CesParams& p) {
    p.validate();
    return -1.0 / (1.0 + p.rho);
}

/// Quantities (F0, R0) with fossil share F0/(F0+R0) = alpha and output y0.
/// Closed form: s = y0 * [alpha^(1-rho) + (1-alpha)^(1-rho)]^(1/rho),
/// F0 = alpha*s, R0 = (1-alpha)*s. In the Cobb-Douglas limit
/// s = y0 / (alpha^alpha * (1-alpha)^(1-alpha)).
inline FactorPoint calibrate_initial(double alpha, double rho, double y0) {
    const CesParams p{alpha, rho};
    p.validate();
    detail::require_positive(y0, "y0");
    double total;
    if (std::abs(rho) < kCobbDouglasRhoEps) {
        total = y0 / (std::pow(alpha, alpha) * std::pow(1.0 - alpha, 1.0 - alpha));
    } else {
        total = y0 * std::pow(std::pow(alpha, 1.0 - rho) +
                                  std::pow(1.0 - alpha, 1.0 - rho),
                              1.0 / rho);
    }
    return FactorPoint{alpha * total, (1.0 - alpha) * total};
}

}  // namespace entrans::ces
