#include "gw2/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

#include <Eigen/Dense>

#include "gw2/mc.hpp"
#include "gw2/ribbon.hpp"
#include "gw2/rng.hpp"

namespace gw2::oracle {

namespace {

struct Slot {
    int row;
    int col;
    int vertex;
};

// One interaction monomial: field slots over shared index variables, explicit
// counterterm marks, and a rational prefactor.
struct Assembly {
    std::vector<Slot> slots;
    std::vector<int> tmarks;           // variables carrying a T_m factor
    std::vector<int> fixed;            // var -> fixed index value, or -1
    Rational coeff = 1;
    int n_vars = 0;
    int n_vertices = 0;
};

// quartic vertex: phi_mn phi_nk phi_kl phi_lm over fresh variables
void add_quartic(Assembly& a) {
    const int b = a.n_vars;
    const int v = a.n_vertices++;
    a.n_vars += 4;
    a.fixed.resize(a.n_vars, -1);
    a.slots.push_back({b + 0, b + 1, v});
    a.slots.push_back({b + 1, b + 2, v});
    a.slots.push_back({b + 2, b + 3, v});
    a.slots.push_back({b + 3, b + 0, v});
}

// tadpole counterterm vertex: T_a phi_ab phi_ba
void add_phi2t(Assembly& a) {
    const int b = a.n_vars;
    const int v = a.n_vertices++;
    a.n_vars += 2;
    a.fixed.resize(a.n_vars, -1);
    a.slots.push_back({b + 0, b + 1, v});
    a.slots.push_back({b + 1, b + 0, v});
    a.tmarks.push_back(b + 0);
}

// external pair phi_mn phi_nm with fixed indices
void add_external_pair(Assembly& a, int m, int n) {
    const int b = a.n_vars;
    const int v = a.n_vertices++;
    a.n_vars += 2;
    a.fixed.resize(a.n_vars, -1);
    a.fixed[b + 0] = m;
    a.fixed[b + 1] = n;
    a.slots.push_back({b + 0, b + 1, v});
    a.slots.push_back({b + 1, b + 0, v});
}

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int x, int y) { parent[find(x)] = find(y); }
};

using Pairing = std::vector<std::pair<int, int>>;  // indices into slots

void enumerate_pairings(int n_slots, std::vector<int>& partner, Pairing& current,
                        const std::function<void(const Pairing&)>& sink) {
    int first = -1;
    for (int s = 0; s < n_slots; ++s)
        if (partner[s] == -1) {
            first = s;
            break;
        }
    if (first == -1) {
        sink(current);
        return;
    }
    for (int s = first + 1; s < n_slots; ++s) {
        if (partner[s] != -1) continue;
        partner[first] = s;
        partner[s] = first;
        current.push_back({first, s});
        enumerate_pairings(n_slots, partner, current, sink);
        current.pop_back();
        partner[first] = -1;
        partner[s] = -1;
    }
}

struct ContractionTerm {
    std::vector<std::pair<int, int>> c_edges;  // (class of row, class of col) per pair
    std::vector<int> t_classes;                // class per T mark
    std::vector<int> class_value;              // fixed value per class, or -1
    std::vector<int> free_classes;
    bool vanishes = false;  // conflicting fixed identifications
    bool connects_all = false;
};

ContractionTerm build_term(const Assembly& a, const Pairing& pairing) {
    ContractionTerm t;
    Dsu vars(a.n_vars);
    Dsu verts(std::max(1, a.n_vertices));
    for (auto [s1, s2] : pairing) {
        // <phi_ab phi_cd> = C_ab delta_ad delta_bc
        vars.unite(a.slots[s1].row, a.slots[s2].col);
        vars.unite(a.slots[s1].col, a.slots[s2].row);
        verts.unite(a.slots[s1].vertex, a.slots[s2].vertex);
    }
    t.connects_all = true;
    for (int v = 1; v < a.n_vertices; ++v)
        if (verts.find(v) != verts.find(0)) t.connects_all = false;

    std::vector<int> class_id(a.n_vars, -1);
    int n_classes = 0;
    for (int x = 0; x < a.n_vars; ++x) {
        const int r = vars.find(x);
        if (class_id[r] == -1) class_id[r] = n_classes++;
    }
    t.class_value.assign(n_classes, -1);
    for (int x = 0; x < a.n_vars; ++x) {
        if (a.fixed[x] < 0) continue;
        const int c = class_id[vars.find(x)];
        if (t.class_value[c] != -1 && t.class_value[c] != a.fixed[x]) {
            t.vanishes = true;
            return t;
        }
        t.class_value[c] = a.fixed[x];
    }
    for (auto [s1, s2] : pairing) {
        (void)s2;
        t.c_edges.push_back({class_id[vars.find(a.slots[s1].row)],
                             class_id[vars.find(a.slots[s1].col)]});
    }
    for (int tm : a.tmarks) t.t_classes.push_back(class_id[vars.find(tm)]);
    for (int c = 0; c < n_classes; ++c)
        if (t.class_value[c] == -1) t.free_classes.push_back(c);
    return t;
}

// A term is a pure tadpole-sum structure when every propagator factor either
// closes into a free row sum (one endpoint is a class used nowhere else) or
// the term consists of counterterm marks alone.
bool is_pure_tadpole_structure(const ContractionTerm& t) {
    if (t.vanishes) return false;
    std::vector<int> incidence;
    auto touch = [&](int c) {
        if (c >= static_cast<int>(incidence.size())) incidence.resize(c + 1, 0);
        ++incidence[c];
    };
    for (auto [a, b] : t.c_edges) {
        touch(a);
        touch(b);
    }
    for (int c : t.t_classes) touch(c);
    auto is_leaf = [&](int c) {
        return t.class_value[c] == -1 && c < static_cast<int>(incidence.size()) &&
               incidence[c] == 1;
    };
    for (auto [a, b] : t.c_edges)
        if (!is_leaf(a) && !is_leaf(b)) return false;
    return true;
}

Rational eval_term(const ContractionTerm& t, const prop::RationalCovariance& cov,
                   const std::vector<Rational>& ttable) {
    if (t.vanishes) return 0;
    std::vector<int> value = t.class_value;
    const int n_free = static_cast<int>(t.free_classes.size());
    Rational total = 0;
    std::vector<int> assign(n_free, 0);
    const int N = cov.cutoff + 1;

    std::function<void(int)> rec = [&](int level) {
        if (level == n_free) {
            Rational prod = 1;
            for (auto [a, b] : t.c_edges) prod *= cov.at(value[a], value[b]);
            for (int c : t.t_classes) prod *= ttable[value[c]];
            total += prod;
            return;
        }
        for (int v = 0; v < N; ++v) {
            value[t.free_classes[level]] = v;
            rec(level + 1);
        }
    };
    rec(0);
    return total;
}

struct TermFilter {
    bool connected = false;
    bool pure_tadpole = false;
};

inline constexpr TermFilter kAll{false, false};
inline constexpr TermFilter kConnected{true, false};
inline constexpr TermFilter kPureTadpole{false, true};
inline constexpr TermFilter kConnectedPureTadpole{true, true};

Rational moment(const Assembly& a, const prop::RationalCovariance& cov,
                const std::vector<Rational>& ttable, TermFilter filter) {
    Rational sum = 0;
    std::vector<int> partner(a.slots.size(), -1);
    Pairing current;
    enumerate_pairings(static_cast<int>(a.slots.size()), partner, current,
                       [&](const Pairing& p) {
                           const ContractionTerm t = build_term(a, p);
                           if (filter.connected && !t.connects_all) return;
                           if (filter.pure_tadpole && !is_pure_tadpole_structure(t)) return;
                           sum += eval_term(t, cov, ttable);
                       });
    return sum * a.coeff;
}

// moments of X = Q - beta P over the vertex-product content
Rational product_moment(const std::vector<int>& quartics_and_ptads,
                        const prop::RationalCovariance& cov,
                        const std::vector<Rational>& ttable, const WickScheme& scheme,
                        TermFilter filter, int ext_m = -1, int ext_n = -1) {
    // quartics_and_ptads: list of vertex kinds, 0 = quartic, 1 = phi^2 T
    Assembly a;
    if (ext_m >= 0) add_external_pair(a, ext_m, ext_n);
    Rational coeff = 1;
    for (int kind : quartics_and_ptads) {
        if (kind == 0) {
            add_quartic(a);
        } else {
            add_phi2t(a);
            coeff *= -Rational(scheme.beta);
        }
    }
    a.coeff = coeff;
    return moment(a, cov, ttable, filter);
}

void check_order_cutoff(int order, int cutoff) {
    if (order < 0 || order > 2)
        throw std::invalid_argument("oracle: only orders k <= 2 are enumerable");
    if (cutoff > 10) throw std::invalid_argument("oracle: exact mode requires cutoff <= 10");
}

}  // namespace

Rational vacuum_coefficient(int order, const prop::RationalCovariance& cov, WickScheme scheme) {
    check_order_cutoff(order, cov.cutoff);
    const auto ct = prop::rational_counterterms(cov);
    if (order == 0) return 0;
    if (order == 1) {
        // -(1/4) E[X],  X = Q - beta P + c0 T2
        Rational ex = product_moment({0}, cov, ct.T, scheme, TermFilter::kAll) +
                      product_moment({1}, cov, ct.T, scheme, TermFilter::kAll) +
                      Rational(scheme.c0) * ct.T2;
        return -ex / 4;
    }
    // (1/32) Var[Q - beta P]; additive constants drop from the variance
    Rational exx = product_moment({0, 0}, cov, ct.T, scheme, TermFilter::kAll) +
                   2 * product_moment({0, 1}, cov, ct.T, scheme, TermFilter::kAll) +
                   product_moment({1, 1}, cov, ct.T, scheme, TermFilter::kAll);
    Rational ex = product_moment({0}, cov, ct.T, scheme, TermFilter::kAll) +
                  product_moment({1}, cov, ct.T, scheme, TermFilter::kAll);
    return (exx - ex * ex) / 32;
}

Rational vacuum_coefficient_connected(int order, const prop::RationalCovariance& cov,
                                      WickScheme scheme) {
    check_order_cutoff(order, cov.cutoff);
    const auto ct = prop::rational_counterterms(cov);
    if (order == 0) return 0;
    if (order == 1) {
        Rational ex = product_moment({0}, cov, ct.T, scheme, TermFilter::kConnected) +
                      product_moment({1}, cov, ct.T, scheme, TermFilter::kConnected) +
                      Rational(scheme.c0) * ct.T2;
        return -ex / 4;
    }
    Rational exx_c = product_moment({0, 0}, cov, ct.T, scheme, TermFilter::kConnected) +
                     2 * product_moment({0, 1}, cov, ct.T, scheme, TermFilter::kConnected) +
                     product_moment({1, 1}, cov, ct.T, scheme, TermFilter::kConnected);
    return exx_c / 32;
}

Rational divergent_structure_total(int order, const prop::RationalCovariance& cov,
                                   WickScheme scheme) {
    check_order_cutoff(order, cov.cutoff);
    const auto ct = prop::rational_counterterms(cov);
    if (order == 0) return 0;
    if (order == 1) {
        Rational ex = product_moment({0}, cov, ct.T, scheme, TermFilter::kPureTadpole) +
                      product_moment({1}, cov, ct.T, scheme, TermFilter::kPureTadpole) +
                      Rational(scheme.c0) * ct.T2;  // the constant is itself a T2 structure
        return -ex / 4;
    }
    // connected second-order terms classified as pure tadpole structures
    Rational exx = product_moment({0, 0}, cov, ct.T, scheme, TermFilter::kPureTadpole) +
                   2 * product_moment({0, 1}, cov, ct.T, scheme, TermFilter::kPureTadpole) +
                   product_moment({1, 1}, cov, ct.T, scheme, TermFilter::kPureTadpole);
    return exx / 32;
}

Rational two_point_coefficient(int order, int m, int n, const prop::RationalCovariance& cov,
                               WickScheme scheme) {
    if (order < 0 || order > 1)
        throw std::invalid_argument("two_point_coefficient: only k <= 1");
    if (m < 0 || n < 0 || m > cov.cutoff || n > cov.cutoff)
        throw std::out_of_range("two_point_coefficient: index beyond cutoff");
    if (order == 0) return cov.at(m, n);
    const auto ct = prop::rational_counterterms(cov);
    // -(1/4) E_c[phi_mn phi_nm X]; the connected filter drops the terms where
    // the external pair closes on itself, which is the cumulant subtraction.
    Rational val =
        product_moment({0}, cov, ct.T, scheme, TermFilter::kConnected, m, n) +
        product_moment({1}, cov, ct.T, scheme, TermFilter::kConnected, m, n);
    return -val / 4;
}

GroupedAmplitudes grouped_order1(const prop::RationalCovariance& cov) {
    const auto ct = prop::rational_counterterms(cov);
    const int N = cov.cutoff + 1;
    GroupedAmplitudes g;
    g.order = 1;

    // A: resolvent loop with both sigma insertions contracted,
    //    -1/2 * (-1/2) * (i s)^2 * 3 * sum_mnp C_mn C_mp -> -(3/2) T2 units
    Rational sa = 0;
    for (int m = 0; m < N; ++m)
        for (int n = 0; n < N; ++n)
            for (int p = 0; p < N; ++p) sa += cov.at(m, n) * cov.at(m, p);
    g.parts.push_back({"A", -Rational(3, 2) * sa, 3});

    // B: square of the linear counterterm, second moment of the diagonal
    //    sigma ensemble: sum_mn T_m T_n <sigma_mm sigma_nn> = sum_m T_m^2
    Rational sb = 0;
    for (int m = 0; m < N; ++m)
        for (int n = 0; n < N; ++n)
            if (m == n) sb += ct.T[m] * ct.T[n];
    g.parts.push_back({"B", -sb, 1});

    // C: the constant counterterm, (5/2) sum_m (sum_p C_mp)(sum_q C_mq)
    Rational sc = 0;
    for (int m = 0; m < N; ++m) {
        Rational rp = 0, rq = 0;
        for (int p = 0; p < N; ++p) rp += cov.at(m, p);
        for (int q = 0; q < N; ++q) rq += cov.at(m, q);
        sc += rp * rq;
    }
    g.parts.push_back({"C", Rational(5, 2) * sc, 1});

    g.total = 0;
    for (const auto& part : g.parts) g.total += part.value;
    return g;
}

GroupedAmplitudes grouped_order2(const prop::RationalCovariance& cov, int perturb_b) {
    const auto ct = prop::rational_counterterms(cov);
    const int N = cov.cutoff + 1;
    const auto mult = ribbon::order2_divergent_multiplicities(perturb_b);
    GroupedAmplitudes g;
    g.order = 2;

    // A: quartic sigma loop, prefactor -1/2 * (-1/4) * D_A of the literal
    //    quadruple sum
    Rational sa = 0;
    for (int m = 0; m < N; ++m)
        for (int n = 0; n < N; ++n)
            for (int l = 0; l < N; ++l)
                for (int p = 0; p < N; ++p)
                    sa += cov.at(m, p) * cov.at(n, p) * cov.at(l, p);
    g.parts.push_back({"A", Rational(mult.A, 8) * sa, mult.A});

    // B: cubic sigma loop against one counterterm, prefactor
    //    (1/2!) * 2 * (-1/2) * (1/3) * D_B
    Rational sb = 0;
    for (int n = 0; n < N; ++n)
        for (int l = 0; l < N; ++l)
            for (int p = 0; p < N; ++p) sb += ct.T[p] * cov.at(n, p) * cov.at(l, p);
    g.parts.push_back({"B", -Rational(mult.B, 6) * sb, mult.B});

    // C: quadratic sigma loop against two counterterms, prefactor
    //    (1/3!) * 3 * (1/4) * D_C
    Rational sc = 0;
    for (int n = 0; n < N; ++n)
        for (int p = 0; p < N; ++p) sc += ct.T[p] * ct.T[p] * cov.at(n, p);
    g.parts.push_back({"C", Rational(mult.C, 8) * sc, mult.C});

    g.total = 0;
    for (const auto& part : g.parts) g.total += part.value;
    return g;
}

McEstimate mc_log_z(const ModelParams& p, double lambda, WickScheme scheme, long samples,
                    std::uint64_t seed, int workers) {
    p.validate();
    const auto cov = prop::covariance(p);
    const auto ct = prop::counterterms(cov);
    const int N = p.dim();
    Eigen::MatrixXd sqrtC(N, N);
    for (int m = 0; m < N; ++m)
        for (int n = 0; n < N; ++n) sqrtC(m, n) = cov.sqrt_diag(m, n);
    Eigen::VectorXd tdiag(N);
    for (int m = 0; m < N; ++m) tdiag(m) = ct.T[m];

    std::vector<std::complex<double>> values(samples);
    parallel_fill(samples, workers, [&](std::size_t i) {
        Rng rng(seed, i);
        const Eigen::MatrixXcd g = random_hermitian(rng, N);
        const Eigen::MatrixXcd phi = sqrtC.cast<std::complex<double>>().cwiseProduct(g);
        const Eigen::MatrixXcd phi2 = phi * phi;
        const double quartic = (phi2 * phi2).trace().real();
        double tad = 0.0;
        for (int m = 0; m < N; ++m) tad += tdiag(m) * phi2(m, m).real();
        const double s_int =
            0.25 * lambda * (quartic - scheme.beta * tad + scheme.c0 * ct.T2);
        values[i] = std::exp(-s_int);
    });
    const MeanStderr z = mean_stderr(values);
    McEstimate out;
    out.mean = std::log(z.mean.real());
    out.stderr_ = z.stderr_ / z.mean.real();
    return out;
}

}  // namespace gw2::oracle
