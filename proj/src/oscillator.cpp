#include "oscillift/oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace oscillift {

OscillatorTruncation build_truncation(const Family<double>& f, std::size_t dim) {
    if (dim < 2) throw InputError("truncation needs dim >= 2");
    auto sym = symmetrize(f, dim);
    OscillatorTruncation t;
    t.dim = dim;
    t.b = sym.b;
    const Eigen::Index n = static_cast<Eigen::Index>(dim);
    t.a_plus = Eigen::MatrixXd::Zero(n, n);
    t.a_minus = Eigen::MatrixXd::Zero(n, n);
    t.number_op = Eigen::MatrixXd::Zero(n, n);
    const double root2 = std::sqrt(2.0);
    for (Eigen::Index j = 0; j < n; ++j) {
        t.number_op(j, j) = static_cast<double>(j);
        if (j + 1 < n) {
            t.a_plus(j + 1, j) = root2 * t.b[j];
            t.a_minus(j, j + 1) = root2 * t.b[j];
        }
    }
    t.B_diag.push_back(0.0);
    for (std::size_t j = 1; j <= dim; ++j) t.B_diag.push_back(f.gamma_at(j));
    Eigen::MatrixXd H = t.a_minus * t.a_plus + t.a_plus * t.a_minus;
    for (Eigen::Index j = 0; j < n; ++j) t.hamiltonian_diag.push_back(H(j, j));
    return t;
}

double RelationReport::max() const {
    return std::max({annihilate_create, create_annihilate, commutator_plus, commutator_minus});
}

RelationReport verify_algebra_relations(const OscillatorTruncation& t) {
    if (t.dim < 3) throw InputError("relation check needs dim >= 3");
    const Eigen::Index n = static_cast<Eigen::Index>(t.dim);
    const Eigen::Index m = n - 1;  // interior block
    Eigen::MatrixXd B0 = Eigen::MatrixXd::Zero(n, n), B1 = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        B0(j, j) = t.B_diag[j];
        B1(j, j) = t.B_diag[j + 1];
    }
    Eigen::MatrixXd r1 = t.a_minus * t.a_plus - 2.0 * B1;
    Eigen::MatrixXd r2 = t.a_plus * t.a_minus - 2.0 * B0;
    Eigen::MatrixXd r3 = t.number_op * t.a_plus - t.a_plus * t.number_op - t.a_plus;
    Eigen::MatrixXd r4 = t.number_op * t.a_minus - t.a_minus * t.number_op + t.a_minus;
    RelationReport rep;
    rep.annihilate_create = r1.topLeftCorner(m, m).cwiseAbs().maxCoeff();
    rep.create_annihilate = r2.topLeftCorner(m, m).cwiseAbs().maxCoeff();
    rep.commutator_plus = r3.topLeftCorner(m, m).cwiseAbs().maxCoeff();
    rep.commutator_minus = r4.topLeftCorner(m, m).cwiseAbs().maxCoeff();
    return rep;
}

Spectrum hamiltonian_spectrum(const OscillatorTruncation& t, const Family<double>& f) {
    const Eigen::Index n = static_cast<Eigen::Index>(t.dim);
    Eigen::MatrixXd H = t.a_minus * t.a_plus + t.a_plus * t.a_minus;
    Spectrum s;
    for (Eigen::Index i = 0; i < n - 1; ++i) {
        for (Eigen::Index j = 0; j < n - 1; ++j)
            if (i != j) s.max_offdiag = std::max(s.max_offdiag, std::abs(H(i, j)));
        double lambda = H(i, i);
        double gn = i == 0 ? 0.0 : f.gamma_at(static_cast<std::size_t>(i));
        double closed = 2.0 * (gn + f.gamma_at(static_cast<std::size_t>(i) + 1));
        s.eigenvalues.push_back(lambda);
        s.closed_form.push_back(closed);
        s.max_rel_dev = std::max(s.max_rel_dev, std::abs(lambda - closed) / std::max(1.0, std::abs(closed)));
    }
    return s;
}

template <class T>
bool algebras_equal(const Family<T>& P, const Family<T>& Q) {
    const std::size_t span = 1 + static_cast<std::size_t>(std::lcm(P.k, Q.k));
    for (std::size_t n = 1; n <= span; ++n) {
        const T& a = P.gamma_at(n);
        const T& b = Q.gamma_at(n);
        if (!is_zero(T(a - b), std::max(abs_value(a), abs_value(b)))) return false;
    }
    return true;
}

template bool algebras_equal<double>(const Family<double>&, const Family<double>&);
template bool algebras_equal<Rational>(const Family<Rational>&, const Family<Rational>&);
template bool algebras_equal<HighFloat>(const Family<HighFloat>&, const Family<HighFloat>&);

std::string to_string(DimensionVerdict v) {
    return v == DimensionVerdict::infinite ? "infinite" : "finite-candidate";
}

DimensionVerdict dimension_check_sequence(const std::vector<double>& bsq) {
    if (bsq.size() < 3) return DimensionVerdict::infinite;
    // n = 0 fixes a0, n = 1 fixes a2
    const double a0 = bsq[0];
    const double a2 = bsq[1] / 2.0 - a0;
    for (std::size_t n = 0; n < bsq.size(); ++n) {
        double dn = static_cast<double>(n);
        double model = (a0 + a2 * dn) * (1.0 + dn);
        if (std::abs(model - bsq[n]) > 1e-12 * std::max(1.0, std::abs(bsq[n]))) return DimensionVerdict::infinite;
    }
    return DimensionVerdict::finite_candidate;
}

DimensionVerdict dimension_check(const Family<double>& f) {
    for (double g : f.gamma)
        if (!(g > 0)) throw InputError("dimension check requires positive-definite family");
    std::vector<double> bsq;
    for (std::size_t n = 0; n <= static_cast<std::size_t>(2 * f.k + 3); ++n) bsq.push_back(f.gamma_at(n + 1));
    return dimension_check_sequence(bsq);
}

}  // namespace oscillift
