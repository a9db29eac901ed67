#include "caratheo/measurefit.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

namespace caratheo {

namespace {

struct CompiledBasis {
    int n = 0;
    int m = 0;
    using FlatPoly = std::vector<std::pair<Monomial, double>>;
    std::vector<FlatPoly> elems;                          // f_j
    std::vector<std::vector<FlatPoly>> derivs;            // [j][v]
    std::vector<std::vector<std::vector<FlatPoly>>> derivs2;  // [j][v][w]

    explicit CompiledBasis(const Basis& basis)
        : n(basis.variableCount()), m(basis.size()) {
        auto flat = [](const PolyQ& p) {
            FlatPoly out;
            for (const auto& [mo, c] : p.terms()) out.emplace_back(mo, toDouble(c));
            return out;
        };
        for (const auto& f : basis.elements()) elems.push_back(flat(f));
        for (const auto& row : basis.elementDerivatives()) {
            std::vector<FlatPoly> d;
            std::vector<std::vector<FlatPoly>> dd;
            for (const auto& p : row) {
                d.push_back(flat(p));
                std::vector<FlatPoly> d2row;
                for (int w = 0; w < n; ++w) d2row.push_back(flat(p.diff(w)));
                dd.push_back(std::move(d2row));
            }
            derivs.push_back(std::move(d));
            derivs2.push_back(std::move(dd));
        }
    }

    static double evalFlat(const std::vector<std::pair<Monomial, double>>& p,
                           const double* x) {
        double acc = 0;
        for (const auto& [mo, c] : p) {
            double t = c;
            for (std::size_t i = 0; i < mo.size(); ++i)
                for (int e = 0; e < mo[i]; ++e) t *= x[i];
            acc += t;
        }
        return acc;
    }
};

// theta layout: per atom (u_i, x_i[0..n-1]); c_i = u_i^2 for positive fits
void residualAndJacobian(const CompiledBasis& cb, const std::vector<double>& sVals,
                         const Eigen::VectorXd& theta, int k, bool signedFit,
                         Eigen::VectorXd& r, Eigen::MatrixXd* J) {
    const int n = cb.n, m = cb.m;
    r = Eigen::VectorXd::Zero(m);
    if (J) J->setZero(m, k * (n + 1));
    for (int i = 0; i < k; ++i) {
        const double u = theta[i * (n + 1)];
        const double c = signedFit ? u : u * u;
        const double* x = theta.data() + i * (n + 1) + 1;
        for (int j = 0; j < m; ++j) {
            double fj = CompiledBasis::evalFlat(cb.elems[j], x);
            r[j] += c * fj;
            if (J) {
                (*J)(j, i * (n + 1)) = signedFit ? fj : 2 * u * fj;
                for (int v = 0; v < n; ++v)
                    (*J)(j, i * (n + 1) + 1 + v) =
                        c * CompiledBasis::evalFlat(cb.derivs[j][v], x);
            }
        }
    }
    for (int j = 0; j < m; ++j) r[j] -= sVals[j];
}

// Levenberg-Marquardt with multiplicative damping; returns final max-norm.
// `project` is an optional residual-preserving gauge normalization applied to
// every candidate (used to pin homogeneous-basis atoms to a fixed radius).
double levenbergMarquardt(const CompiledBasis& cb, const std::vector<double>& sVals,
                          Eigen::VectorXd& theta, int k, bool signedFit,
                          double absTol, int maxIter,
                          const std::function<void(Eigen::VectorXd&)>& project = {}) {
    const int p = static_cast<int>(theta.size());
    if (project) project(theta);
    Eigen::VectorXd r;
    Eigen::MatrixXd J(cb.m, p);
    residualAndJacobian(cb, sVals, theta, k, signedFit, r, &J);
    double cost = r.squaredNorm();
    double lambda = 1e-3;
    int stall = 0;
    for (int it = 0; it < maxIter; ++it) {
        if (r.lpNorm<Eigen::Infinity>() <= absTol) break;
        Eigen::MatrixXd A = J.transpose() * J;
        Eigen::VectorXd g = J.transpose() * r;
        Eigen::VectorXd diag = A.diagonal().cwiseMax(1e-12);
        A.diagonal() += lambda * diag;
        Eigen::VectorXd delta = A.ldlt().solve(-g);
        Eigen::VectorXd cand = theta + delta;
        if (project) project(cand);
        Eigen::VectorXd rc;
        residualAndJacobian(cb, sVals, cand, k, signedFit, rc, nullptr);
        double candCost = rc.squaredNorm();
        if (candCost < cost) {
            if (cost - candCost < 1e-16 * (1 + cost)) ++stall; else stall = 0;
            theta = cand;
            cost = candCost;
            lambda = std::max(lambda * 0.3, 1e-12);
            residualAndJacobian(cb, sVals, theta, k, signedFit, r, &J);
        } else {
            lambda *= 8;
            ++stall;
            if (lambda > 1e14) break;
        }
        if (stall > 100) break;
    }
    return r.lpNorm<Eigen::Infinity>();
}

// Gauss-Newton stalls on boundary sequences: components that vanish
// quadratically at the support create spurious first-order critical points.
// This full Newton trust-region polish (exact second derivatives, eigen-
// decomposed More-Sorensen subproblem, negative-curvature steps at saddles)
// closes the gap once the greedy construction lands in the right basin.
double trustRegionNewton(const CompiledBasis& cb, const std::vector<double>& sVals,
                         Eigen::VectorXd& theta, int k, bool signedFit,
                         double absTol, int maxIter,
                         const std::function<void(Eigen::VectorXd&)>& project = {}) {
    const int n = cb.n, m = cb.m, p = k * (n + 1);
    if (project) project(theta);
    Eigen::VectorXd r;
    Eigen::MatrixXd J(m, p);
    residualAndJacobian(cb, sVals, theta, k, signedFit, r, &J);
    double cost = 0.5 * r.squaredNorm();
    double Delta = 1.0;
    for (int it = 0; it < maxIter; ++it) {
        if (r.lpNorm<Eigen::Infinity>() <= absTol) break;
        Eigen::VectorXd grad = J.transpose() * r;
        Eigen::MatrixXd H = J.transpose() * J;
        // add sum_j r_j * Hess(r_j); atoms are independent, so blockwise
        for (int i = 0; i < k; ++i) {
            const double u = theta[i * (n + 1)];
            const double c = signedFit ? u : u * u;
            const double* x = theta.data() + i * (n + 1) + 1;
            const int b = i * (n + 1);
            for (int j = 0; j < m; ++j) {
                if (!signedFit)
                    H(b, b) += r[j] * 2 * CompiledBasis::evalFlat(cb.elems[j], x);
                for (int v = 0; v < n; ++v) {
                    double dv = CompiledBasis::evalFlat(cb.derivs[j][v], x);
                    double cross = r[j] * (signedFit ? dv : 2 * u * dv);
                    H(b, b + 1 + v) += cross;
                    H(b + 1 + v, b) += cross;
                    for (int w = 0; w < n; ++w)
                        H(b + 1 + v, b + 1 + w) +=
                            r[j] * c * CompiledBasis::evalFlat(cb.derivs2[j][v][w], x);
                }
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
        const auto& ev = es.eigenvalues();
        Eigen::VectorXd gq = es.eigenvectors().transpose() * grad;
        auto pnorm = [&](double lam) {
            double nn = 0;
            for (int i2 = 0; i2 < p; ++i2) {
                double d = ev[i2] + lam;
                nn += (gq[i2] * gq[i2]) / (d * d);
            }
            return std::sqrt(nn);
        };
        double lam0 = std::max(0.0, -ev[0] + 1e-12);
        double lam = lam0;
        if (pnorm(lam + 1e-12) > Delta) {
            double lo = lam0, hi = lam0 + 1.0;
            while (pnorm(hi) > Delta) hi = 2 * hi + 1;
            for (int b = 0; b < 200; ++b) {
                double mid = 0.5 * (lo + hi);
                (pnorm(mid) > Delta ? lo : hi) = mid;
            }
            lam = 0.5 * (lo + hi);
        }
        Eigen::VectorXd pq(p);
        for (int i2 = 0; i2 < p; ++i2) {
            double d = ev[i2] + lam;
            pq[i2] = std::abs(d) > 1e-300 ? -gq[i2] / d : 0.0;
        }
        Eigen::VectorXd step = es.eigenvectors() * pq;
        if (lam <= lam0 + 1e-30 && step.norm() < 1e-14 && ev[0] < -1e-12) {
            // gradient-free saddle: walk the negative-curvature direction
            step = Delta * es.eigenvectors().col(0);
        }
        double predicted = -(grad.dot(step) + 0.5 * step.dot(H * step));
        Eigen::VectorXd cand = theta + step;
        Eigen::VectorXd rc;
        residualAndJacobian(cb, sVals, cand, k, signedFit, rc, nullptr);
        double candCost = 0.5 * rc.squaredNorm();
        double rho = predicted > 0 ? (cost - candCost) / predicted : -1.0;
        if (rho > 1e-4) {
            theta = cand;
            if (project) project(theta);
            residualAndJacobian(cb, sVals, theta, k, signedFit, r, &J);
            cost = 0.5 * r.squaredNorm();
            if (rho > 0.75 && step.norm() > 0.8 * Delta)
                Delta = std::min(Delta * 2, 100.0);
        } else {
            Delta *= 0.25;
            if (Delta < 1e-14) break;
        }
    }
    return r.lpNorm<Eigen::Infinity>();
}

// length scale of the sequence, from degree >= 1 moments relative to the mass
double atomScale(const MomentSeq& s) {
    double mass = 1;
    for (int j = 0; j < s.basis.size(); ++j)
        if (s.basis.element(j).degree() == 0) {
            double c0 = toDouble(s.basis.element(j).leadingTerm().second);
            if (std::abs(c0 * s.values[j]) > 1e-12) mass = std::abs(c0 * s.values[j]);
            break;
        }
    double scale = 1;
    for (int j = 0; j < s.basis.size(); ++j) {
        int d = s.basis.element(j).degree();
        if (d >= 1 && std::abs(s.values[j]) > 0)
            scale = std::max(scale, std::pow(std::abs(s.values[j]) / mass, 1.0 / d));
    }
    return scale;
}

Eigen::VectorXd curveAt(const CompiledBasis& cb, const std::vector<double>& x) {
    Eigen::VectorXd v(cb.m);
    for (int j = 0; j < cb.m; ++j)
        v[j] = CompiledBasis::evalFlat(cb.elems[j], x.data());
    return v;
}

// current support of a greedy fit
struct WorkingSet {
    std::vector<std::vector<double>> X;
    std::vector<double> c;
    int size() const { return static_cast<int>(X.size()); }
};

// Least-squares weights for fixed atoms. Positive mode runs an active-set
// loop: solve, drop the most negative weight, repeat; dropped atoms are
// pruned from the working set.
void solveWeights(const CompiledBasis& cb, WorkingSet& ws, const Eigen::VectorXd& s,
                  bool signedFit) {
    const int k = ws.size();
    if (k == 0) { ws.c.clear(); return; }
    Eigen::MatrixXd B(cb.m, k);
    for (int i = 0; i < k; ++i) B.col(i) = curveAt(cb, ws.X[i]);
    std::vector<int> active(k);
    std::iota(active.begin(), active.end(), 0);
    std::vector<double> weights(k, 0.0);
    while (!active.empty()) {
        const int a = static_cast<int>(active.size());
        Eigen::MatrixXd Ba(cb.m, a);
        for (int i = 0; i < a; ++i) Ba.col(i) = B.col(active[i]);
        Eigen::MatrixXd A = Ba.transpose() * Ba;
        A.diagonal() += 1e-12 * A.diagonal().cwiseMax(1.0);
        Eigen::VectorXd c = A.ldlt().solve(Ba.transpose() * s);
        int worst = -1;
        for (int i = 0; i < a; ++i)
            if (!signedFit && c[i] < 0 && (worst < 0 || c[i] < c[worst])) worst = i;
        if (worst < 0) {
            for (int i = 0; i < a; ++i) weights[active[i]] = c[i];
            break;
        }
        active.erase(active.begin() + worst);
    }
    WorkingSet pruned;
    for (int i = 0; i < k; ++i) {
        if (weights[i] == 0.0) continue;
        pruned.X.push_back(std::move(ws.X[i]));
        pruned.c.push_back(weights[i]);
    }
    ws = std::move(pruned);
}

// standard Nelder-Mead simplex minimization of f around x
void nmMinimize(const std::function<double(const std::vector<double>&)>& f,
                std::vector<double>& x, double step, int maxIter) {
    const int n = static_cast<int>(x.size());
    std::vector<std::pair<double, std::vector<double>>> simplex;
    simplex.emplace_back(f(x), x);
    for (int i = 0; i < n; ++i) {
        std::vector<double> v = x;
        v[i] += step;
        simplex.emplace_back(f(v), std::move(v));
    }
    auto bySc = [](const auto& a, const auto& b) { return a.first < b.first; };
    for (int it = 0; it < maxIter; ++it) {
        std::sort(simplex.begin(), simplex.end(), bySc);
        if (simplex.back().first - simplex.front().first <
            1e-14 * (1 + std::abs(simplex.front().first))) break;
        std::vector<double> centroid(n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int v = 0; v < n; ++v) centroid[v] += simplex[i].second[v] / n;
        auto blend = [&](double t) {
            std::vector<double> v(n);
            for (int i = 0; i < n; ++i)
                v[i] = centroid[i] + t * (simplex[n].second[i] - centroid[i]);
            return v;
        };
        std::vector<double> refl = blend(-1.0);
        double fr = f(refl);
        if (fr < simplex[0].first) {
            std::vector<double> exp2 = blend(-2.0);
            double fe = f(exp2);
            simplex[n] = fe < fr ? std::make_pair(fe, std::move(exp2))
                                 : std::make_pair(fr, std::move(refl));
        } else if (fr < simplex[n - 1].first) {
            simplex[n] = {fr, std::move(refl)};
        } else {
            std::vector<double> con = blend(0.5);
            double fc = f(con);
            if (fc < simplex[n].first) {
                simplex[n] = {fc, std::move(con)};
            } else {
                for (int i = 1; i <= n; ++i) {
                    for (int v = 0; v < n; ++v)
                        simplex[i].second[v] =
                            0.5 * (simplex[i].second[v] + simplex[0].second[v]);
                    simplex[i].first = f(simplex[i].second);
                }
            }
        }
    }
    std::sort(simplex.begin(), simplex.end(), bySc);
    x = simplex.front().second;
}

// Conditional-gradient atom insertion: pick the point whose moment-curve
// direction best reduces the current residual r (largest -<r, s_A(x)> for
// positive weights, largest |<r, s_A(x)>| for signed ones). Random sphere/
// Gaussian candidates at the sequence's length scale, refined by Nelder-Mead.
std::vector<double> findAtom(const CompiledBasis& cb, const Eigen::VectorXd& r,
                             bool signedFit, double scale, bool homogeneous,
                             std::mt19937_64& rng) {
    const int n = cb.n;
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> logr(std::log(0.3), std::log(3.0));
    auto score = [&](const std::vector<double>& xIn) {
        std::vector<double> x = xIn;
        double nrm = 0;
        for (double v : x) nrm += v * v;
        nrm = std::sqrt(nrm);
        if (homogeneous) {
            // radius is gauge; score the direction at the canonical radius
            if (nrm < 1e-12 * scale) return -1e100;
            for (double& v : x) v *= scale / nrm;
        } else if (nrm > 10.0 * scale) {
            return -1e100;  // confine the search
        }
        double t = -r.dot(curveAt(cb, x));
        return signedFit ? std::abs(t) : t;
    };
    std::vector<std::pair<double, std::vector<double>>> top;
    for (int cand = 0; cand < 256; ++cand) {
        std::vector<double> x(n);
        double nrm = 0;
        for (double& v : x) { v = gauss(rng); nrm += v * v; }
        nrm = std::sqrt(std::max(nrm, 1e-300));
        double radius = homogeneous ? scale : scale * std::exp(logr(rng));
        for (double& v : x) v *= radius / nrm;
        top.emplace_back(score(x), std::move(x));
    }
    std::partial_sort(top.begin(), top.begin() + 3, top.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first; });
    top.resize(3);
    for (auto& [sc, x] : top) {
        nmMinimize([&](const std::vector<double>& y) { return -score(y); }, x,
                   0.1 * scale, 150);
        sc = score(x);
    }
    std::sort(top.begin(), top.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    // a stochastic pick among the refined candidates keeps restarts diverse
    std::uniform_int_distribution<int> pick(0, 3);
    auto& chosen = top[std::min(pick(rng), 2)].second;
    if (homogeneous) {
        double nrm = 0;
        for (double v : chosen) nrm += v * v;
        nrm = std::sqrt(nrm);
        if (nrm > 1e-12 * scale)
            for (double& v : chosen) v *= scale / nrm;
    }
    return chosen;
}

Eigen::VectorXd packTheta(const WorkingSet& ws, int n, bool signedFit) {
    Eigen::VectorXd theta(ws.size() * (n + 1));
    for (int i = 0; i < ws.size(); ++i) {
        theta[i * (n + 1)] =
            signedFit ? ws.c[i] : std::sqrt(std::max(ws.c[i], 1e-14));
        for (int v = 0; v < n; ++v) theta[i * (n + 1) + 1 + v] = ws.X[i][v];
    }
    return theta;
}

void unpackTheta(const Eigen::VectorXd& theta, int n, bool signedFit, WorkingSet& ws) {
    const int k = static_cast<int>(theta.size()) / (n + 1);
    ws.X.assign(k, std::vector<double>(n, 0.0));
    ws.c.assign(k, 0.0);
    for (int i = 0; i < k; ++i) {
        double u = theta[i * (n + 1)];
        ws.c[i] = signedFit ? u : u * u;
        for (int v = 0; v < n; ++v) ws.X[i][v] = theta[i * (n + 1) + 1 + v];
    }
}

// One greedy construction: grow the support atom by atom, re-solving weights
// and jointly refining after each insertion, then polish with the full
// iteration budget. Returns the final max-norm residual.
double greedyFit(const CompiledBasis& cb, const std::vector<double>& sVals, int k,
                 bool signedFit, double absTol, int maxIter, double scale,
                 bool homogeneous,
                 const std::function<void(Eigen::VectorXd&)>& project,
                 std::mt19937_64& rng, WorkingSet& ws) {
    Eigen::VectorXd s = Eigen::Map<const Eigen::VectorXd>(sVals.data(), cb.m);
    ws = {};
    Eigen::VectorXd r = -s;
    auto refresh = [&]() {
        r = -s;
        for (int i = 0; i < ws.size(); ++i) r += ws.c[i] * curveAt(cb, ws.X[i]);
    };
    for (int step = 0; step < 4 * k + 2; ++step) {
        if (r.lpNorm<Eigen::Infinity>() <= absTol) break;
        if (ws.size() >= k) {
            // swap move: drop the weakest atom and try a fresh one
            int weakest = 0;
            for (int i = 1; i < ws.size(); ++i)
                if (std::abs(ws.c[i]) < std::abs(ws.c[weakest])) weakest = i;
            ws.X.erase(ws.X.begin() + weakest);
            ws.c.erase(ws.c.begin() + weakest);
        }
        ws.X.push_back(findAtom(cb, r, signedFit, scale, homogeneous, rng));
        ws.c.push_back(0.0);
        solveWeights(cb, ws, s, signedFit);
        if (ws.size() > 0) {
            Eigen::VectorXd theta = packTheta(ws, cb.n, signedFit);
            levenbergMarquardt(cb, sVals, theta, ws.size(), signedFit, absTol, 80,
                               project);
            unpackTheta(theta, cb.n, signedFit, ws);
        }
        refresh();
    }
    if (ws.size() == 0) return r.lpNorm<Eigen::Infinity>();
    Eigen::VectorXd theta = packTheta(ws, cb.n, signedFit);
    double res = levenbergMarquardt(cb, sVals, theta, ws.size(), signedFit,
                                    absTol, maxIter, project);
    if (res > absTol)
        res = trustRegionNewton(cb, sVals, theta, ws.size(), signedFit, absTol,
                                maxIter, project);
    unpackTheta(theta, cb.n, signedFit, ws);
    return res;
}

// One plain multi-start attempt: k random atoms at the sequence's length
// scale, least-squares weights, then the same joint polish as the greedy
// path. Complements the greedy construction when the atom-insertion
// subproblem is unbounded (gapped bases with fast-growing top element).
double randomFit(const CompiledBasis& cb, const std::vector<double>& sVals, int k,
                 bool signedFit, double absTol, int maxIter, double scale,
                 const std::function<void(Eigen::VectorXd&)>& project,
                 std::mt19937_64& rng, WorkingSet& ws) {
    Eigen::VectorXd s = Eigen::Map<const Eigen::VectorXd>(sVals.data(), cb.m);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> logr(std::log(0.3), std::log(3.0));
    ws = {};
    for (int i = 0; i < k; ++i) {
        std::vector<double> x(cb.n);
        double nrm = 0;
        for (double& v : x) { v = gauss(rng); nrm += v * v; }
        nrm = std::sqrt(std::max(nrm, 1e-300));
        double radius = scale * std::exp(logr(rng));
        for (double& v : x) v *= radius / nrm;
        ws.X.push_back(std::move(x));
        ws.c.push_back(0.0);
    }
    solveWeights(cb, ws, s, signedFit);
    // keep the full support even if the initial weights were clipped to zero
    while (ws.size() < k) {
        std::vector<double> x(cb.n);
        for (double& v : x) v = scale * gauss(rng);
        ws.X.push_back(std::move(x));
        ws.c.push_back(1e-3);
    }
    Eigen::VectorXd theta = packTheta(ws, cb.n, signedFit);
    double res = levenbergMarquardt(cb, sVals, theta, ws.size(), signedFit,
                                    absTol, maxIter, project);
    if (res > absTol)
        res = trustRegionNewton(cb, sVals, theta, ws.size(), signedFit, absTol,
                                maxIter, project);
    unpackTheta(theta, cb.n, signedFit, ws);
    return res;
}

// common degree if every element is homogeneous of the same degree >= 1,
// else -1; such bases have the exact gauge c*s_A(x) = (c r^d)*s_A(x/r)
int commonHomDegree(const Basis& b) {
    int d = -2;
    for (const auto& el : b.elements()) {
        if (!el.isHomogeneous()) return -1;
        if (d == -2) d = el.degree();
        else if (el.degree() != d) return -1;
    }
    return d >= 1 ? d : -1;
}

// renormalize each atom to radius `scale`, folding the factor into the weight
std::function<void(Eigen::VectorXd&)> makeProjector(int n, int homDeg, double scale,
                                                    bool signedFit) {
    if (homDeg < 1) return {};
    return [n, homDeg, scale, signedFit](Eigen::VectorXd& theta) {
        const int k = static_cast<int>(theta.size()) / (n + 1);
        for (int i = 0; i < k; ++i) {
            double* x = theta.data() + i * (n + 1) + 1;
            double nrm = 0;
            for (int v = 0; v < n; ++v) nrm += x[v] * x[v];
            nrm = std::sqrt(nrm);
            if (nrm < 1e-12 * scale) continue;
            double factor = std::pow(nrm / scale, homDeg);
            theta[i * (n + 1)] *= signedFit ? factor : std::sqrt(factor);
            for (int v = 0; v < n; ++v) x[v] *= scale / nrm;
        }
    };
}

}  // namespace

FitResult fitMeasure(const MomentSeq& s, int k, bool signedFit, const FitConfig& cfg) {
    if (k < 0) throw DimensionError("fitMeasure: k must be nonnegative");
    if (static_cast<int>(s.values.size()) != s.basis.size())
        throw DimensionError("fitMeasure: sequence length mismatch");
    const int n = s.basis.variableCount();
    double sNorm = 0;
    for (double v : s.values) sNorm = std::max(sNorm, std::abs(v));
    // relative to ||s||_inf, floored at 1 so the zero sequence stays fittable
    const double absTol = cfg.fitTolerance * std::max(sNorm, 1.0);

    FitResult best;
    best.measure.isSigned = signedFit;
    best.residual = sNorm;
    if (k == 0) {
        best.converged = (sNorm <= absTol);
        return best;
    }

    CompiledBasis cb(s.basis);
    std::vector<double> sVals(s.values.begin(), s.values.end());
    const double scale = atomScale(s);
    const int homDeg = commonHomDegree(s.basis);
    const bool homogeneous = homDeg > 0;
    auto project = makeProjector(n, homDeg, scale, signedFit);
    std::mt19937_64 rng(cfg.seed);
    bool haveBest = false;

    for (int restart = 0; restart < cfg.restarts; ++restart) {
        WorkingSet ws;
        double res = restart % 2 == 0
                         ? greedyFit(cb, sVals, k, signedFit, absTol,
                                     cfg.maxIterations, scale, homogeneous,
                                     project, rng, ws)
                         : randomFit(cb, sVals, k, signedFit, absTol,
                                     cfg.maxIterations, scale, project, rng, ws);
        if (!haveBest || res < best.residual) {
            haveBest = true;
            best.residual = res;
            best.measure.weights = ws.c;
            best.measure.points = ws.X;
        }
        best.restartsUsed = restart + 1;
        if (best.residual <= absTol) {
            best.converged = true;
            break;
        }
    }
    (void)n;
    return best;
}

CaraEstimate estimateCara(const MomentSeq& s, bool signedFit, const FitConfig& cfg,
                          int certifiedLowerBound) {
    const int m = s.basis.size();
    double sNorm = 0;
    for (double v : s.values) sNorm = std::max(sNorm, std::abs(v));
    CaraEstimate est{s, 0, 0, FitResult{}};
    est.kMin = std::max(sNorm > 0 ? 1 : 0, certifiedLowerBound);
    for (int k = 0; k <= m; ++k) {
        FitResult fr = fitMeasure(s, k, signedFit, cfg);
        if (fr.converged) {
            est.kFound = k;
            est.witness = std::move(fr);
            return est;
        }
    }
    throw DataIntegrityError(
        "estimateCara: no converged fit up to k = m; the input is numerically "
        "not a moment sequence (or the tolerance is too tight)");
}

MaxMassResult maxMass(const MomentSeq& s, const std::vector<double>& x,
                      const PolyQ& e, const FitConfig& cfg, double massTolerance) {
    const int m = s.basis.size();
    if (static_cast<int>(x.size()) != s.basis.variableCount())
        throw DimensionError("maxMass: point dimension mismatch");
    const double ex = e.evalDouble(x);
    if (ex <= 0) throw DimensionError("maxMass: e must be positive at x");

    // coordinates of e in the basis, solved exactly over the union support
    std::vector<Rational> coords;
    {
        std::map<Monomial, int, GrlexLess> cols;
        for (const auto& f : s.basis.elements())
            for (const auto& [mo, c] : f.terms()) cols.emplace(mo, 0);
        for (const auto& [mo, c] : e.terms())
            if (!cols.count(mo))
                throw DimensionError("maxMass: e is not in the span of the basis");
        int idx = 0;
        for (auto& [mo, i] : cols) i = idx++;
        const int rows = idx;
        // solve B^T coords = e by Gaussian elimination over Q
        Matrix<Rational> aug(rows, std::vector<Rational>(m + 1, 0));
        for (int j = 0; j < m; ++j)
            for (const auto& [mo, c] : s.basis.element(j).terms())
                aug[cols.at(mo)][j] = c;
        for (const auto& [mo, c] : e.terms()) aug[cols.at(mo)][m] = c;
        int rank = 0;
        std::vector<int> pivCol(rows, -1);
        for (int col = 0; col < m && rank < rows; ++col) {
            int piv = -1;
            for (int rr = rank; rr < rows; ++rr)
                if (aug[rr][col] != 0) { piv = rr; break; }
            if (piv < 0) continue;
            std::swap(aug[rank], aug[piv]);
            Rational inv = aug[rank][col];
            for (int cc = col; cc <= m; ++cc) aug[rank][cc] /= inv;
            for (int rr = 0; rr < rows; ++rr) {
                if (rr == rank || aug[rr][col] == 0) continue;
                Rational f = aug[rr][col];
                for (int cc = col; cc <= m; ++cc) aug[rr][cc] -= f * aug[rank][cc];
            }
            pivCol[rank] = col;
            ++rank;
        }
        coords.assign(m, 0);
        for (int rr = 0; rr < rows; ++rr) {
            bool allZero = true;
            for (int cc = 0; cc < m; ++cc)
                if (aug[rr][cc] != 0) { allZero = false; break; }
            if (allZero && aug[rr][m] != 0)
                throw DimensionError("maxMass: e is not in the span of the basis");
        }
        for (int rr = 0; rr < rank; ++rr) coords[pivCol[rr]] = aug[rr][m];
    }
    double Lse = 0;
    for (int j = 0; j < m; ++j) Lse += toDouble(coords[j]) * s.values[j];
    const double upper = Lse / ex;

    std::vector<double> sAx;
    for (const auto& f : s.basis.elements()) sAx.push_back(f.evalDouble(x));

    FitConfig mcfg = cfg;
    mcfg.restarts = 32;
    auto member = [&](double c) {
        MomentSeq t = s;
        for (int j = 0; j < m; ++j) t.values[j] -= c * sAx[j];
        return fitMeasure(t, m, false, mcfg).converged;
    };

    if (!member(0.0))
        throw DataIntegrityError("maxMass: input is not a moment sequence");
    MaxMassResult out;
    out.point = x;
    out.upperBoundUsed = upper;
    if (upper <= 0 || member(upper)) {
        out.cLow = out.cHigh = out.cStar = std::max(upper, 0.0);
        return out;
    }
    double lo = 0, hi = upper;
    while (hi - lo > massTolerance) {
        double mid = 0.5 * (lo + hi);
        if (member(mid)) lo = mid; else hi = mid;
    }
    out.cLow = lo;
    out.cHigh = hi;
    out.cStar = 0.5 * (lo + hi);
    return out;
}

namespace {

Eigen::VectorXd kernelVector(const CompiledBasis& cb, const Eigen::VectorXd& theta,
                             int k, double t, const Eigen::VectorXd* prev,
                             const FlowConfig& fcfg) {
    const int n = cb.n, m = cb.m, p = k * (n + 1);
    if (p > m + 1)
        throw FlowBreakdown(t, "kernel dimension at least 2 (too many parameters)");
    Eigen::MatrixXd J(m, p);
    // weights enter linearly here (no u^2 reparameterization along the flow)
    Eigen::VectorXd r;
    residualAndJacobian(cb, std::vector<double>(m, 0.0), theta, k, true, r, &J);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const int q = static_cast<int>(sv.size());
    if (p == m) {
        if (sv[q - 1] > 1e-8 * sv[0])
            throw FlowBreakdown(t, "kernel is trivial (full-rank square system)");
        if (q >= 2 && sv[q - 2] < 10 * sv[q - 1])
            throw FlowBreakdown(t, "singular-value gap collapsed (kernel dim > 1)");
    } else {  // p == m + 1: one structural kernel direction
        if (sv[q - 1] < 1e-8 * sv[0])
            throw FlowBreakdown(t, "kernel dimension exceeds 1");
    }
    Eigen::VectorXd v = svd.matrixV().col(p - 1);
    if (prev && prev->dot(v) < 0) v = -v;
    if (fcfg.normalization == FlowConfig::Normalization::FixedRate) {
        double comp = v[fcfg.rateCoordinate];
        if (std::abs(comp) < 1e-12)
            throw FlowBreakdown(t, "rate coordinate vanishes in the kernel vector");
        v *= fcfg.rate / comp;
    }
    return v;
}

}  // namespace

std::vector<FlowState> kernelFlow(const Basis& basis, const AtomicMeasure& mu0,
                                  double t0, double t1, int steps,
                                  const FlowConfig& fcfg) {
    if (steps < 1) throw DimensionError("kernelFlow: steps must be positive");
    const int n = basis.variableCount();
    const int k = mu0.atomCount();
    CompiledBasis cb(basis);

    Eigen::VectorXd theta(k * (n + 1));
    for (int i = 0; i < k; ++i) {
        theta[i * (n + 1)] = mu0.weights[i];
        for (int v = 0; v < n; ++v) theta[i * (n + 1) + 1 + v] = mu0.points[i][v];
    }
    auto toMeasure = [&](const Eigen::VectorXd& th) {
        AtomicMeasure mu;
        mu.isSigned = mu0.isSigned;
        mu.weights.assign(k, 0.0);
        mu.points.assign(k, std::vector<double>(n, 0.0));
        for (int i = 0; i < k; ++i) {
            mu.weights[i] = th[i * (n + 1)];
            for (int v = 0; v < n; ++v) mu.points[i][v] = th[i * (n + 1) + 1 + v];
        }
        return mu;
    };
    auto s0 = momentMap(basis, mu0).values;
    auto drift = [&](const Eigen::VectorXd& th) {
        auto sv = momentMap(basis, toMeasure(th)).values;
        double d = 0;
        for (std::size_t j = 0; j < sv.size(); ++j)
            d = std::max(d, std::abs(sv[j] - s0[j]));
        return d;
    };

    const double h = (t1 - t0) / steps;
    Eigen::VectorXd prev = kernelVector(cb, theta, k, t0, nullptr, fcfg);

    std::vector<FlowState> out;
    out.push_back({t0, toMeasure(theta), 0.0});
    double t = t0;
    for (int step = 0; step < steps; ++step) {
        Eigen::VectorXd k1 = kernelVector(cb, theta, k, t, &prev, fcfg);
        Eigen::VectorXd k2 = kernelVector(cb, theta + 0.5 * h * k1, k, t + 0.5 * h, &k1, fcfg);
        Eigen::VectorXd k3 = kernelVector(cb, theta + 0.5 * h * k2, k, t + 0.5 * h, &k2, fcfg);
        Eigen::VectorXd k4 = kernelVector(cb, theta + h * k3, k, t + h, &k3, fcfg);
        theta += (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4);
        prev = k4;
        t = t0 + (step + 1) * h;
        out.push_back({t, toMeasure(theta), drift(theta)});
    }
    return out;
}

WaringResult waringDecompose(const PolyQ& f, const FitConfig& cfg) {
    if (f.isZero()) {
        // the zero form is the empty decomposition
        MomentSeq s{Basis::homogeneous(std::max(f.variableCount(), 1), 0), {0.0}};
        CaraEstimate est = estimateCara(s, true, cfg);
        AtomicMeasure mu = est.witness.measure;
        mu.isSigned = true;
        return WaringResult{std::move(mu), 0.0, std::move(est)};
    }
    if (!f.isHomogeneous() || f.degree() % 2 != 0)
        throw DimensionError("waringDecompose: f must be homogeneous of even degree");
    const int n = f.variableCount();
    const int twoD = f.degree();
    Basis basis = Basis::homogeneous(n, twoD);
    MomentSeq s{basis, {}};
    std::vector<Rational> gammas;
    for (const auto& el : basis.elements()) {
        const Monomial& alpha = el.leadingTerm().first;
        Rational g(multinomial(alpha));
        gammas.push_back(g);
        s.values.push_back(toDouble(f.coefficient(alpha) / g));
    }
    CaraEstimate est = estimateCara(s, true, cfg);
    AtomicMeasure mu = est.witness.measure;
    mu.isSigned = true;
    // coefficient-space reconstruction check of sum c_i (lambda_i . x)^{2d}
    auto fitted = momentMap(basis, mu).values;
    double err = 0;
    for (int j = 0; j < basis.size(); ++j) {
        double target = toDouble(f.coefficient(basis.element(j).leadingTerm().first));
        err = std::max(err, std::abs(toDouble(gammas[j]) * fitted[j] - target));
    }
    return WaringResult{std::move(mu), err, std::move(est)};
}

}  // namespace caratheo
