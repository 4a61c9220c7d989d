#include "uebkit/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>

#include "uebkit/error.hpp"
#include "uebkit/ueb.hpp"

namespace uebkit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMaxStarts = 16;
constexpr double kStartSeparation = 0.05;
constexpr double kClusterDistance = 1e-4;

using Angles4 = std::array<double, 4>;  // theta_a, phi_a, theta_b, phi_b

std::array<cplx, 2> qubit(double theta, double phi) {
    return {cplx{std::cos(0.5 * theta), 0.0}, std::polar(std::sin(0.5 * theta), phi)};
}

Amplitudes product_amplitudes(const Angles4& x) {
    const auto a = qubit(x[0], x[1]);
    const auto b = qubit(x[2], x[3]);
    return {a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]};
}

struct Overlaps {
    double target = 0.0;
    double others_sum = 0.0;
    double others_sq = 0.0;
};

Overlaps overlaps(const Amplitudes& alpha, const OrthogonalSet& set, std::size_t i) {
    Overlaps o;
    for (std::size_t j = 0; j < set.size(); ++j) {
        const double m = std::abs(inner(alpha, set[j].amplitudes()));
        if (j == i) {
            o.target = m;
        } else {
            o.others_sum += m;
            o.others_sq += m * m;
        }
    }
    return o;
}

double score(const Overlaps& o) { return o.target - kPenaltyWeight * o.others_sum; }

// Compass search over the full 3^D stencil (diagonals included) at step h:
// move to the best strictly improving neighbour, otherwise halve h. Two
// halvings make one round, so each round shrinks the cell by kRefineShrink.
// Ties keep the earlier stencil point.
template <std::size_t D, typename F>
std::array<double, D> zoom_maximize(std::array<double, D> center, std::array<double, D> h, int rounds, F&& value) {
    static_assert(kRefineShrink == 4);
    std::size_t total = 1;
    for (std::size_t d = 0; d < D; ++d) {
        total *= 3;
    }
    double best = value(center);
    const int halvings = 2 * rounds;
    int done = 0;
    for (int iter = 0; done < halvings && iter < 64 * halvings + 64; ++iter) {
        std::array<double, D> arg = center;
        bool moved = false;
        for (std::size_t flat = 0; flat < total; ++flat) {
            std::array<double, D> x{};
            std::size_t rem = flat;
            bool is_center = true;
            for (std::size_t d = 0; d < D; ++d) {
                const int o = static_cast<int>(rem % 3) - 1;
                rem /= 3;
                x[d] = center[d] + o * h[d];
                is_center = is_center && o == 0;
            }
            if (is_center) {
                continue;
            }
            const double v = value(x);
            if (v > best) {
                best = v;
                arg = x;
                moved = true;
            }
        }
        center = arg;
        if (!moved) {
            for (double& s : h) {
                s *= 0.5;
            }
            ++done;
        }
    }
    return center;
}

// Levenberg-Marquardt on the real and imaginary parts of the overlaps with
// the members other than i, starting from x. Runs until the residual stops
// improving so that tangent zeros are approached as closely as doubles allow.
Angles4 polish(Angles4 x, const OrthogonalSet& set, std::size_t i) {
    std::array<std::size_t, 2> others{};
    for (std::size_t j = 0, k = 0; j < 3; ++j) {
        if (j != i) {
            others[k++] = j;
        }
    }
    const auto residual = [&](const Angles4& y) {
        const Amplitudes alpha = product_amplitudes(y);
        Eigen::Vector4d r;
        for (std::size_t k = 0; k < 2; ++k) {
            const cplx v = inner(alpha, set[others[k]].amplitudes());
            r[2 * k] = v.real();
            r[2 * k + 1] = v.imag();
        }
        return r;
    };
    const auto jacobian = [&](const Angles4& y) {
        const auto a = qubit(y[0], y[1]);
        const auto b = qubit(y[2], y[3]);
        const std::array<cplx, 2> da_t{cplx{-0.5 * std::sin(0.5 * y[0]), 0.0}, std::polar(0.5 * std::cos(0.5 * y[0]), y[1])};
        const std::array<cplx, 2> da_p{cplx{}, cplx{0.0, 1.0} * a[1]};
        const std::array<cplx, 2> db_t{cplx{-0.5 * std::sin(0.5 * y[2]), 0.0}, std::polar(0.5 * std::cos(0.5 * y[2]), y[3])};
        const std::array<cplx, 2> db_p{cplx{}, cplx{0.0, 1.0} * b[1]};
        const std::array<Amplitudes, 4> d{
            Amplitudes{da_t[0] * b[0], da_t[0] * b[1], da_t[1] * b[0], da_t[1] * b[1]},
            Amplitudes{da_p[0] * b[0], da_p[0] * b[1], da_p[1] * b[0], da_p[1] * b[1]},
            Amplitudes{a[0] * db_t[0], a[0] * db_t[1], a[1] * db_t[0], a[1] * db_t[1]},
            Amplitudes{a[0] * db_p[0], a[0] * db_p[1], a[1] * db_p[0], a[1] * db_p[1]}};
        Eigen::Matrix4d jac;
        for (std::size_t c = 0; c < 4; ++c) {
            for (std::size_t k = 0; k < 2; ++k) {
                const cplx v = inner(d[c], set[others[k]].amplitudes());
                jac(static_cast<Eigen::Index>(2 * k), static_cast<Eigen::Index>(c)) = v.real();
                jac(static_cast<Eigen::Index>(2 * k + 1), static_cast<Eigen::Index>(c)) = v.imag();
            }
        }
        return jac;
    };

    Eigen::Vector4d r = residual(x);
    double cost = r.squaredNorm();
    double mu = 1e-3;
    for (int iter = 0; iter < 200 && cost > 0.0; ++iter) {
        const Eigen::Matrix4d jac = jacobian(x);
        const Eigen::Matrix4d jtj = jac.transpose() * jac;
        const Eigen::Vector4d g = jac.transpose() * r;
        bool improved = false;
        while (mu < 1e12) {
            Eigen::Matrix4d lhs = jtj;
            lhs.diagonal().array() += mu * (1.0 + jtj.diagonal().array());
            const Eigen::Vector4d step = lhs.ldlt().solve(-g);
            Angles4 y = x;
            for (std::size_t k = 0; k < 4; ++k) {
                y[k] += step[static_cast<Eigen::Index>(k)];
            }
            const Eigen::Vector4d ry = residual(y);
            if (ry.squaredNorm() < cost) {
                x = y;
                r = ry;
                cost = ry.squaredNorm();
                mu = std::max(mu / 10.0, 1e-15);
                improved = true;
                break;
            }
            mu *= 10.0;
        }
        if (!improved) {
            break;
        }
    }
    return x;
}

}  // namespace

void GridSpec::validate() const {
    if (resolution < 8) {
        throw Error(ErrorCode::BadParam, "grid resolution must be at least 8");
    }
    if (refinement_rounds < 0) {
        throw Error(ErrorCode::BadParam, "refinement rounds must be nonnegative");
    }
    if (!(accept_threshold > 0.0 && accept_threshold < 1e-3)) {
        throw Error(ErrorCode::BadParam, "acceptance threshold must lie in (0, 1e-3)");
    }
}

OracleVerdict oracle_identifiable(const OrthogonalSet& set, std::size_t i, const GridSpec& g) {
    g.validate();
    if (set.size() != 3) {
        throw Error(ErrorCode::BadCardinality, "oracle search needs three states");
    }
    if (i >= 3) {
        throw Error(ErrorCode::IndexOutOfRange, "index " + std::to_string(i));
    }
    const std::size_t n = static_cast<std::size_t>(g.resolution);
    const double h_theta = kPi / static_cast<double>(n - 1);
    const double h_phi = 2.0 * kPi / static_cast<double>(n);

    // Per-qubit grid, flat index = theta_index * n + phi_index.
    const std::size_t nq = n * n;
    std::vector<float> q0(nq), q1re(nq), q1im(nq);
    for (std::size_t t = 0; t < n; ++t) {
        for (std::size_t p = 0; p < n; ++p) {
            const auto q = qubit(static_cast<double>(t) * h_theta, static_cast<double>(p) * h_phi);
            q0[t * n + p] = static_cast<float>(q[0].real());
            q1re[t * n + p] = static_cast<float>(q[1].real());
            q1im[t * n + p] = static_cast<float>(q[1].imag());
        }
    }

    // Target first, then the two others.
    std::array<std::array<std::array<cplx, 2>, 2>, 3> mats{};
    {
        std::size_t slot = 1;
        for (std::size_t j = 0; j < 3; ++j) {
            mats[j == i ? 0 : slot++] = CoefficientMatrix::from(set[j]).m;
        }
    }

    // <a (x) b|psi> = sum_c conj(b_c) w_c with w_c = sum_r conj(a_r) M[r][c].
    // Scores are produced one theta_a slice at a time; three slices are kept so
    // each slice can be scanned for local maxima against its theta neighbours.
    const std::size_t slice = n * nq;
    std::vector<float> m0(nq), m1(nq), m2(nq);
    const auto fill_slice = [&](std::size_t ta, float* dst) {
        for (std::size_t pa = 0; pa < n; ++pa) {
            const std::size_t ia = ta * n + pa;
            const cplx a0{q0[ia], 0.0};
            const cplx a1{q1re[ia], q1im[ia]};
            std::array<float, 3> w0re{}, w0im{}, w1re{}, w1im{};
            for (std::size_t s = 0; s < 3; ++s) {
                const cplx w0 = std::conj(a0) * mats[s][0][0] + std::conj(a1) * mats[s][1][0];
                const cplx w1 = std::conj(a0) * mats[s][0][1] + std::conj(a1) * mats[s][1][1];
                w0re[s] = static_cast<float>(w0.real());
                w0im[s] = static_cast<float>(w0.imag());
                w1re[s] = static_cast<float>(w1.real());
                w1im[s] = static_cast<float>(w1.imag());
            }
            const auto magnitudes = [&](std::size_t s, float* out) {
                for (std::size_t ib = 0; ib < nq; ++ib) {
                    const float re = q0[ib] * w0re[s] + q1re[ib] * w1re[s] + q1im[ib] * w1im[s];
                    const float im = q0[ib] * w0im[s] + q1re[ib] * w1im[s] - q1im[ib] * w1re[s];
                    out[ib] = std::sqrt(re * re + im * im);
                }
            };
            magnitudes(0, m0.data());
            magnitudes(1, m1.data());
            magnitudes(2, m2.data());
            float* row = dst + pa * nq;
            for (std::size_t ib = 0; ib < nq; ++ib) {
                row[ib] = m0[ib] - static_cast<float>(kPenaltyWeight) * (m1[ib] + m2[ib]);
            }
        }
    };

    // Coarse local maxima over axis neighbours (theta clamped, phi periodic).
    struct Start {
        float score;
        std::size_t index;
    };
    std::vector<Start> maxima;
    const std::array<std::size_t, 4> stride{slice, nq, n, 1};
    std::vector<float> ring(3 * slice);
    const auto slot = [&](std::size_t ta) { return ring.data() + (ta % 3) * slice; };
    fill_slice(0, slot(0));
    for (std::size_t ta = 0; ta < n; ++ta) {
        if (ta + 1 < n) {
            fill_slice(ta + 1, slot(ta + 1));
        }
        const float* cur = slot(ta);
        const float* prev = ta > 0 ? slot(ta - 1) : nullptr;
        const float* next = ta + 1 < n ? slot(ta + 1) : nullptr;
        std::array<std::size_t, 3> idx{};
        for (idx[0] = 0; idx[0] < n; ++idx[0]) {
            for (idx[1] = 0; idx[1] < n; ++idx[1]) {
                for (idx[2] = 0; idx[2] < n; ++idx[2]) {
                    const std::size_t local = idx[0] * nq + idx[1] * n + idx[2];
                    const float v = cur[local];
                    bool is_max = true;
                    for (std::size_t d = 3; d-- > 0 && is_max;) {
                        const bool periodic = d % 2 == 0;
                        const std::size_t k = idx[d];
                        const std::size_t st = stride[d + 1];
                        const std::size_t base = local - k * st;
                        if (k > 0 || periodic) {
                            is_max = cur[base + (k + n - 1) % n * st] <= v;
                        }
                        if (is_max && (k + 1 < n || periodic)) {
                            is_max = cur[base + (k + 1) % n * st] <= v;
                        }
                    }
                    if (is_max && prev) {
                        is_max = prev[local] <= v;
                    }
                    if (is_max && next) {
                        is_max = next[local] <= v;
                    }
                    if (is_max) {
                        maxima.push_back({v, ta * slice + local});
                    }
                }
            }
        }
    }
    std::stable_sort(maxima.begin(), maxima.end(), [](const Start& a, const Start& b) { return a.score > b.score; });

    const auto angles_of = [&](std::size_t flat) {
        return Angles4{static_cast<double>(flat / stride[0] % n) * h_theta,
                       static_cast<double>(flat / stride[1] % n) * h_phi,
                       static_cast<double>(flat / stride[2] % n) * h_theta, static_cast<double>(flat % n) * h_phi};
    };

    std::vector<PureState> seen;
    std::vector<Angles4> starts;
    for (const Start& s : maxima) {
        const Angles4 x = angles_of(s.index);
        const PureState st = make_state(product_amplitudes(x));
        if (std::any_of(seen.begin(), seen.end(),
                        [&](const PureState& o) { return ray_distance(o, st) < kStartSeparation; })) {
            continue;
        }
        seen.push_back(st);
        starts.push_back(x);
        if (starts.size() == kMaxStarts) {
            break;
        }
    }

    OracleVerdict verdict;
    verdict.best_score = -std::numeric_limits<double>::infinity();
    const double theta = g.accept_threshold;
    for (const Angles4& x0 : starts) {
        const Angles4 zoomed = zoom_maximize<4>(x0, {h_theta, h_phi, h_theta, h_phi}, g.refinement_rounds, [&](const Angles4& y) {
            return score(overlaps(product_amplitudes(y), set, i));
        });
        const Angles4 x = polish(zoomed, set, i);
        const Amplitudes alpha = product_amplitudes(x);
        const Overlaps o = overlaps(alpha, set, i);
        const bool accepted = o.others_sq < theta * theta && o.target > kOverlapSeparation * theta;
        const double sc = score(o);
        // Report the accepted candidate with the best score, else the best score overall.
        if ((accepted && (!verdict.identifiable || sc > verdict.best_score)) ||
            (!accepted && !verdict.identifiable && sc > verdict.best_score)) {
            verdict.identifiable = accepted;
            verdict.best_score = sc;
            verdict.zero_overlaps = std::sqrt(o.others_sq);
            verdict.target_overlap = o.target;
            verdict.witness = accepted ? std::optional<PureState>(make_state(alpha)) : std::nullopt;
        }
    }
    return verdict;
}

ProductScan oracle_product_scan(const Subspace& sub, const GridSpec& g) {
    g.validate();
    if (sub.dim() != 2) {
        throw Error(ErrorCode::BadDimension, "product scan needs a 2-D subspace");
    }
    const auto mu = CoefficientMatrix::from(sub.basis()[0]).m;
    const auto mv = CoefficientMatrix::from(sub.basis()[1]).m;
    const auto element = [&](double t, double p) {
        const cplx a{std::cos(t), 0.0};
        const cplx b = std::polar(std::sin(t), p);
        CoefficientMatrix c;
        for (int r = 0; r < 2; ++r) {
            for (int k = 0; k < 2; ++k) {
                c.m[r][k] = a * mu[r][k] + b * mv[r][k];
            }
        }
        return c;
    };
    const auto det_abs = [&](double t, double p) { return std::abs(element(t, p).det()); };
    // LM on (Re det, Im det); d det = dm00 m11 + m00 dm11 - dm01 m10 - m01 dm10.
    const auto polish2 = [&](std::array<double, 2> x) {
        const auto residual = [&](const std::array<double, 2>& y) {
            const cplx d = element(y[0], y[1]).det();
            return Eigen::Vector2d{d.real(), d.imag()};
        };
        const auto jacobian = [&](const std::array<double, 2>& y) {
            const auto m = element(y[0], y[1]).m;
            const cplx da_t{-std::sin(y[0]), 0.0};
            const cplx db_t = std::polar(std::cos(y[0]), y[1]);
            const cplx db_p = cplx{0.0, 1.0} * std::polar(std::sin(y[0]), y[1]);
            Eigen::Matrix2d jac;
            for (int c = 0; c < 2; ++c) {
                const cplx ca = c == 0 ? da_t : cplx{};
                const cplx cb = c == 0 ? db_t : db_p;
                std::array<std::array<cplx, 2>, 2> dm{};
                for (int r = 0; r < 2; ++r) {
                    for (int k = 0; k < 2; ++k) {
                        dm[r][k] = ca * mu[r][k] + cb * mv[r][k];
                    }
                }
                const cplx dd = dm[0][0] * m[1][1] + m[0][0] * dm[1][1] - dm[0][1] * m[1][0] - m[0][1] * dm[1][0];
                jac(0, c) = dd.real();
                jac(1, c) = dd.imag();
            }
            return jac;
        };
        Eigen::Vector2d r = residual(x);
        double cost = r.squaredNorm();
        double damp = 1e-3;
        for (int iter = 0; iter < 200 && cost > 0.0; ++iter) {
            const Eigen::Matrix2d jac = jacobian(x);
            const Eigen::Matrix2d jtj = jac.transpose() * jac;
            const Eigen::Vector2d grad = jac.transpose() * r;
            bool improved = false;
            while (damp < 1e12) {
                Eigen::Matrix2d lhs = jtj;
                lhs.diagonal().array() += damp * (1.0 + jtj.diagonal().array());
                const Eigen::Vector2d step = lhs.ldlt().solve(-grad);
                const std::array<double, 2> y{x[0] + step[0], x[1] + step[1]};
                const Eigen::Vector2d ry = residual(y);
                if (ry.squaredNorm() < cost) {
                    x = y;
                    r = ry;
                    cost = ry.squaredNorm();
                    damp = std::max(damp / 10.0, 1e-15);
                    improved = true;
                    break;
                }
                damp *= 10.0;
            }
            if (!improved) {
                break;
            }
        }
        return x;
    };

    const std::size_t n = static_cast<std::size_t>(g.resolution);
    const double h_t = 0.5 * kPi / static_cast<double>(n - 1);
    const double h_p = 2.0 * kPi / static_cast<double>(n);
    std::vector<double> f(n * n);
    double fmax = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        for (std::size_t p = 0; p < n; ++p) {
            f[t * n + p] = det_abs(static_cast<double>(t) * h_t, static_cast<double>(p) * h_p);
            fmax = std::max(fmax, f[t * n + p]);
        }
    }
    ProductScan out;
    if (fmax < g.accept_threshold) {
        out.all_product_suspect = true;
        return out;
    }
    for (std::size_t t = 0; t < n; ++t) {
        for (std::size_t p = 0; p < n; ++p) {
            const double v = f[t * n + p];
            bool is_min = true;
            for (int dt = -1; dt <= 1 && is_min; ++dt) {
                for (int dp = -1; dp <= 1; ++dp) {
                    const long tt = static_cast<long>(t) + dt;
                    if ((dt == 0 && dp == 0) || tt < 0 || tt >= static_cast<long>(n)) {
                        continue;
                    }
                    const std::size_t pp = (p + n + static_cast<std::size_t>(dp + static_cast<int>(n))) % n;
                    if (f[static_cast<std::size_t>(tt) * n + pp] < v) {
                        is_min = false;
                        break;
                    }
                }
            }
            if (!is_min) {
                continue;
            }
            auto x = zoom_maximize<2>({static_cast<double>(t) * h_t, static_cast<double>(p) * h_p}, {h_t, h_p},
                                            g.refinement_rounds,
                                            [&](const std::array<double, 2>& y) { return -det_abs(y[0], y[1]); });
            x = polish2(x);
            if (det_abs(x[0], x[1]) >= g.accept_threshold) {
                continue;
            }
            const PureState s = make_state(element(x[0], x[1]).flatten());
            if (std::none_of(out.candidates.begin(), out.candidates.end(),
                             [&](const PureState& c) { return ray_distance(c, s) < kClusterDistance; })) {
                out.candidates.push_back(s);
            }
        }
    }
    return out;
}

Oracle::Oracle(const GridSpec& g) : grid_(g) {
    grid_.validate();
    for (const OrthogonalSet& known : {canonical_max_entangled_triple(), random_max_entangled_triple(1)}) {
        for (std::size_t i = 0; i < 3; ++i) {
            if (!oracle_identifiable(known, i, grid_).identifiable) {
                throw Error(ErrorCode::ResolutionTooCoarse,
                            "grid search missed a certified witness (maximally entangled triple, member " +
                                std::to_string(i) + ")");
            }
        }
    }
}

}  // namespace uebkit
