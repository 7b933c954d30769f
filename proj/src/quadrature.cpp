#include "kratzer/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <queue>

#include "kratzer/errors.hpp"

namespace kratzer::quad {
namespace {

constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0,
};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
// Gauss weights at xgk[1], xgk[3], xgk[5], xgk[7].
constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Piece {
    double a, b, value, error;
    bool operator<(const Piece& o) const { return error < o.error; }
};

Piece kronrod15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double k = wgk[7] * fc;
    double g = wg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double f1 = f(c - h * xgk[j]);
        const double f2 = f(c + h * xgk[j]);
        k += wgk[j] * (f1 + f2);
        if (j % 2 == 1) g += wg[j / 2] * (f1 + f2);
    }
    return {a, b, k * h, std::abs((k - g) * h)};
}

}  // namespace

Result gauss_kronrod(const std::function<double(double)>& f, double a, double b, double rel_tol, double abs_tol,
                     int max_intervals, int initial) {
    if (!(b > a)) throw InvalidInput("gauss_kronrod: empty interval");
    initial = std::max(1, initial);
    std::priority_queue<Piece> queue;
    Result res;
    const double w = (b - a) / initial;
    for (int i = 0; i < initial; ++i) {
        queue.push(kronrod15(f, a + i * w, i + 1 == initial ? b : a + (i + 1) * w));
        res.evaluations += 15;
    }

    auto totals = [&queue]() {
        // Copy is O(m); m stays in the low thousands.
        auto q = queue;
        double v = 0.0, e = 0.0, c = 0.0;
        while (!q.empty()) {
            const double y = q.top().value - c;
            const double t = v + y;
            c = (t - v) - y;
            v = t;
            e += q.top().error;
            q.pop();
        }
        return std::pair{v, e};
    };

    auto [value, error] = totals();
    while (error > std::max(abs_tol, rel_tol * std::abs(value)) && static_cast<int>(queue.size()) < max_intervals) {
        const Piece worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            queue.push(worst);
            break;
        }
        queue.push(kronrod15(f, worst.a, mid));
        queue.push(kronrod15(f, mid, worst.b));
        res.evaluations += 30;
        std::tie(value, error) = totals();
    }
    res.value = value;
    res.error = error;
    res.converged = error <= std::max(abs_tol, rel_tol * std::abs(value));
    return res;
}

LaguerreRule gauss_laguerre(int order, double alpha) {
    if (order < 1) throw InvalidInput("gauss_laguerre: order must be positive");
    if (!(alpha > -1.0)) throw InvalidInput("gauss_laguerre: alpha must exceed -1");

    Eigen::VectorXd diag(order);
    Eigen::VectorXd sub(std::max(order - 1, 0));
    for (int i = 0; i < order; ++i) diag[i] = 2.0 * i + alpha + 1.0;
    for (int i = 1; i < order; ++i) sub[i - 1] = std::sqrt(i * (i + alpha));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) throw ConvergenceError("gauss_laguerre: eigen-solve failed", 0.0, 0.0);

    LaguerreRule rule;
    rule.alpha = alpha;
    rule.nodes.resize(order);
    rule.log_weights.resize(order);
    const double log_mu0 = std::lgamma(alpha + 1.0);
    for (int i = 0; i < order; ++i) {
        rule.nodes[i] = solver.eigenvalues()[i];
        const double v0 = solver.eigenvectors()(0, i);
        rule.log_weights[i] = log_mu0 + 2.0 * std::log(std::abs(v0));
    }
    return rule;
}

}  // namespace kratzer::quad
