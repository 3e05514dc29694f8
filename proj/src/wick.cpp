#include "wzlab/wick.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "wzlab/rate.hpp"

namespace wzlab {

namespace {

constexpr double kExponentMergeTol = 1e-12;

double l2_diff_norm(const GridFunction& a, const GridFunction& b) {
    const auto ac = a.cells();
    const auto bc = b.cells();
    double acc = 0.0;
    for (std::size_t i = 0; i < ac.size(); ++i) {
        const double d = ac[i] - bc[i];
        acc += d * d;
    }
    return std::sqrt(acc * a.grid().dt());
}

bool lex_less(const GridFunction& a, const GridFunction& b) {
    const auto ac = a.cells();
    const auto bc = b.cells();
    for (std::size_t i = 0; i < ac.size(); ++i) {
        if (ac[i] != bc[i]) return ac[i] < bc[i];
    }
    return false;
}

}  // namespace

ExponentialVector::ExponentialVector(std::vector<Term> terms)
    : grid_(terms.empty() ? TimeGrid(1.0, 1) : terms.front().exponent.grid()),
      terms_(std::move(terms)) {
    for (const Term& t : terms_) {
        require_same_grid(grid_, t.exponent.grid(), "ExponentialVector");
    }
    canonicalize();
}

ExponentialVector ExponentialVector::exponential(GridFunction f, double coeff) {
    std::vector<Term> terms;
    terms.push_back(Term{coeff, std::move(f)});
    return ExponentialVector(std::move(terms));
}

ExponentialVector ExponentialVector::constant(const TimeGrid& grid, double c) {
    return exponential(GridFunction::zero(grid), c);
}

void ExponentialVector::canonicalize() {
    std::vector<Term> merged;
    for (Term& t : terms_) {
        bool absorbed = false;
        for (Term& m : merged) {
            if (l2_diff_norm(t.exponent, m.exponent) <= kExponentMergeTol) {
                m.coeff += t.coeff;
                absorbed = true;
                break;
            }
        }
        if (!absorbed) merged.push_back(std::move(t));
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const Term& t) { return t.coeff == 0.0; }),
                 merged.end());
    std::sort(merged.begin(), merged.end(),
              [](const Term& a, const Term& b) { return lex_less(a.exponent, b.exponent); });
    terms_ = std::move(merged);
}

double ExponentialVector::evaluate(const BrownianPath& path) const {
    double acc = 0.0;
    for (const Term& t : terms_) {
        acc += t.coeff * std::exp(ito_integral(t.exponent, path) - 0.5 * t.exponent.l2_norm_sq());
    }
    return acc;
}

double ExponentialVector::mean() const {
    double acc = 0.0;
    for (const Term& t : terms_) acc += t.coeff;
    return acc;
}

ExponentialVector& ExponentialVector::operator*=(double s) {
    for (Term& t : terms_) t.coeff *= s;
    canonicalize();
    return *this;
}

ExponentialVector& ExponentialVector::operator+=(const ExponentialVector& other) {
    if (!other.terms_.empty()) {
        if (terms_.empty()) {
            grid_ = other.grid_;
        } else {
            require_same_grid(grid_, other.grid_, "ExponentialVector::operator+=");
        }
        terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
        canonicalize();
    }
    return *this;
}

ExponentialVector operator-(ExponentialVector a, const ExponentialVector& b) {
    ExponentialVector negated = b;
    negated *= -1.0;
    return a += negated;
}

ExponentialVector wick_product(const ExponentialVector& a, const ExponentialVector& b) {
    if (a.empty() || b.empty()) return ExponentialVector({});
    require_same_grid(a.grid(), b.grid(), "wick_product");
    std::vector<ExponentialVector::Term> terms;
    terms.reserve(a.terms().size() * b.terms().size());
    for (const auto& ta : a.terms()) {
        for (const auto& tb : b.terms()) {
            terms.push_back({ta.coeff * tb.coeff, ta.exponent + tb.exponent});
        }
    }
    return ExponentialVector(std::move(terms));
}

ExponentialVector translate(const ExponentialVector& a, const GridFunction& g) {
    if (a.empty()) return a;
    require_same_grid(a.grid(), g.grid(), "translate");
    std::vector<ExponentialVector::Term> terms = a.terms();
    for (auto& t : terms) t.coeff *= std::exp(inner_product(t.exponent, g));
    return ExponentialVector(std::move(terms));
}

ExponentialVector gamma_contract(const ExponentialVector& a) {
    std::vector<ExponentialVector::Term> terms = a.terms();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (auto& t : terms) t.exponent *= inv_sqrt2;
    return ExponentialVector(std::move(terms));
}

ExponentialVector malliavin_directional(const ExponentialVector& a, const GridFunction& u) {
    if (a.empty()) return a;
    require_same_grid(a.grid(), u.grid(), "malliavin_directional");
    std::vector<ExponentialVector::Term> terms = a.terms();
    for (auto& t : terms) t.coeff *= inner_product(t.exponent, u);
    return ExponentialVector(std::move(terms));
}

bool approx_equal(const ExponentialVector& a, const ExponentialVector& b, double rel_tol) {
    if (a.terms().size() != b.terms().size()) return false;
    for (std::size_t i = 0; i < a.terms().size(); ++i) {
        const auto& ta = a.terms()[i];
        const auto& tb = b.terms()[i];
        if (l2_diff_norm(ta.exponent, tb.exponent) > kExponentMergeTol) return false;
        const double scale = std::max({1.0, std::abs(ta.coeff), std::abs(tb.coeff)});
        if (std::abs(ta.coeff - tb.coeff) > rel_tol * scale) return false;
    }
    return true;
}

double PlainExponential::evaluate(const BrownianPath& path) const {
    return std::exp(ito_integral(f_, path));
}

ExponentialVector PlainExponential::as_exponential_vector() const {
    return ExponentialVector::exponential(f_, std::exp(0.5 * f_.l2_norm_sq()));
}

double lp_norm_exact(const ExponentialVector& a, double p) {
    if (p < 1.0) throw std::invalid_argument("lp_norm_exact: p must be at least 1");
    if (a.empty()) return 0.0;
    if (a.terms().size() == 1) {
        const auto& t = a.terms().front();
        return std::abs(t.coeff) * std::exp(0.5 * (p - 1.0) * t.exponent.l2_norm_sq());
    }
    if (p == 2.0) {
        double acc = 0.0;
        for (const auto& ti : a.terms()) {
            for (const auto& tj : a.terms()) {
                acc += ti.coeff * tj.coeff * std::exp(inner_product(ti.exponent, tj.exponent));
            }
        }
        return std::sqrt(std::max(acc, 0.0));
    }
    throw NotExactlyComputable(
        "lp_norm_exact: multi-term norms are not exactly computable for p != 2; "
        "use a Monte Carlo estimate");
}

double lp_norm_exact(const PlainExponential& a, double p) {
    if (p < 1.0) throw std::invalid_argument("lp_norm_exact: p must be at least 1");
    return std::exp(0.5 * p * a.exponent().l2_norm_sq());
}

double l2_distance_exact(const GridFunction& f, const GridFunction& g, ExponentialKind kind) {
    require_same_grid(f.grid(), g.grid(), "l2_distance_exact");
    const double f2 = f.l2_norm_sq();
    const double g2 = g.l2_norm_sq();
    double sq = 0.0;
    if (kind == ExponentialKind::PlainExp) {
        const double s2 = (f + g).l2_norm_sq();
        sq = std::exp(2.0 * f2) + std::exp(2.0 * g2) - 2.0 * std::exp(0.5 * s2);
    } else {
        const double fg = inner_product(f, g);
        sq = std::exp(f2) + std::exp(g2) - 2.0 * std::exp(fg);
    }
    return std::sqrt(std::max(sq, 0.0));
}

double l2_distance_inverse_exact(const GridFunction& f, const GridFunction& g) {
    // E(f)^{-1} = Gamma(1/sqrt 2) exp{-delta(sqrt 2 f)} = e^{|f|^2} E(-f), so the
    // difference of inverses lives in the span and the p = 2 norm is exact.
    const ExponentialVector lhs =
        ExponentialVector::exponential(-f, std::exp(f.l2_norm_sq())) -
        ExponentialVector::exponential(-g, std::exp(g.l2_norm_sq()));
    return lp_norm_exact(lhs, 2.0);
}

SBoundReport check_s_bound(const GridFunction& f, const GridFunction& g, double p, SBoundKind kind,
                           double fitted_c) {
    if (p != 2.0) {
        throw std::invalid_argument("check_s_bound: exact left sides are available at p = 2 only");
    }
    SBoundReport report{};
    const double diff_norm = (f - g).l2_norm();
    switch (kind) {
        case SBoundKind::PlainExp:
            report.lhs = l2_distance_exact(f, g, ExponentialKind::PlainExp);
            report.s_arg = diff_norm;
            break;
        case SBoundKind::StochExp:
            report.lhs = l2_distance_exact(f, g, ExponentialKind::StochExp);
            report.s_arg = diff_norm;
            break;
        case SBoundKind::InverseStochExp:
            report.lhs = l2_distance_inverse_exact(f, g);
            report.s_arg = std::sqrt(2.0) * diff_norm;
            break;
    }
    report.s_value = s_q(report.s_arg, p);
    report.rhs = fitted_c * report.s_value;
    report.holds = report.lhs <= report.rhs;
    return report;
}

TranslationLipschitzReport translation_lipschitz_check(const GridFunction& f,
                                                       const GridFunction& h, double p, double q) {
    if (!(q > p) || p < 1.0) {
        throw std::invalid_argument("translation_lipschitz_check: requires 1 <= p < q");
    }
    TranslationLipschitzReport report{};
    const double f2 = f.l2_norm_sq();
    const double fnorm = std::sqrt(f2);
    report.h_norm = h.l2_norm();
    report.lhs = std::abs(std::expm1(inner_product(h, f))) * std::exp(0.5 * (p - 1.0) * f2);
    // ||E(f)||_{D^{1,q}}^q = E[E(f)^q] + |f|^q E[E(f)^q], with D E(f) = E(f) f
    report.sobolev_norm =
        std::pow((1.0 + std::pow(fnorm, q)) * std::exp(0.5 * q * (q - 1.0) * f2), 1.0 / q);
    report.ratio =
        report.h_norm > 0.0 ? report.lhs / (report.h_norm * report.sobolev_norm) : 0.0;
    return report;
}

double translation_chain_rule_discrepancy(const TranslationFlowFamilies& families, double t,
                                          double fd_step, const std::vector<BrownianPath>& paths) {
    const ExponentialVector x_plus = families.state(t + fd_step);
    const ExponentialVector x_minus = families.state(t - fd_step);
    const GridFunction h_plus = families.shift(t + fd_step);
    const GridFunction h_minus = families.shift(t - fd_step);
    const ExponentialVector upper = translate(x_plus, h_plus);
    const ExponentialVector lower = translate(x_minus, h_minus);

    const ExponentialVector shifted_state = translate(families.state(t), families.shift(t));
    const GridFunction h_rate = families.shift_rate(t);
    // T_h X * delta(dh/dt) - T_h X <> delta(dh/dt) collapses to the directional
    // Malliavin derivative, so the right side stays inside the span.
    const ExponentialVector rhs_vector =
        translate(families.state_rate(t), families.shift(t)) +
        malliavin_directional(shifted_state, h_rate);

    double worst = 0.0;
    for (const BrownianPath& path : paths) {
        const double lhs = (upper.evaluate(path) - lower.evaluate(path)) / (2.0 * fd_step);
        const double rhs = rhs_vector.evaluate(path);
        const double rel = std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
        worst = std::max(worst, rel);
    }
    return worst;
}

}  // namespace wzlab
