#include "gw2/ribbon.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

namespace gw2::ribbon {

int RibbonGraph::n_edges() const {
    int paired = 0;
    for (int h = 0; h < n_half_edges(); ++h)
        if (!external[h]) ++paired;
    return paired / 2;
}

RibbonGraph from_wick_pairing(int n_vertices, const std::vector<std::pair<int, int>>& pairs,
                              const std::vector<int>& externals) {
    if (n_vertices < 1) throw std::invalid_argument("from_wick_pairing: need >= 1 vertex");
    RibbonGraph g;
    g.n_vertices = n_vertices;
    const int H = g.n_half_edges();
    g.pairing.assign(H, -1);
    g.external.assign(H, false);
    for (int e : externals) {
        if (e < 0 || e >= H) throw std::invalid_argument("external half-edge out of range");
        g.external[e] = true;
        g.pairing[e] = e;
    }
    for (auto [a, b] : pairs) {
        if (a < 0 || b < 0 || a >= H || b >= H || a == b)
            throw std::invalid_argument("pairing: invalid half-edge pair");
        if (g.external[a] || g.external[b])
            throw std::invalid_argument("pairing: half-edge already marked external");
        if (g.pairing[a] != -1 || g.pairing[b] != -1)
            throw std::invalid_argument("pairing: half-edge paired twice");
        g.pairing[a] = b;
        g.pairing[b] = a;
    }
    for (int h = 0; h < H; ++h)
        if (g.pairing[h] == -1)
            throw std::invalid_argument("pairing: uncovered half-edge " + std::to_string(h));
    return g;
}

FaceData faces(const RibbonGraph& g) {
    const int H = g.n_half_edges();
    FaceData fd;
    std::vector<bool> seen(H, false);
    for (int start = 0; start < H; ++start) {
        if (seen[start]) continue;
        std::vector<int> walk;
        int h = start;
        bool broken = false;
        do {
            seen[h] = true;
            walk.push_back(h);
            if (g.external[h]) broken = true;
            h = g.cyclic_next(g.pairing[h]);
        } while (h != start);
        fd.faces.push_back(walk);
        if (broken) ++fd.broken;
    }
    fd.F = static_cast<int>(fd.faces.size());

    // connectivity over vertices through ribbons
    std::vector<int> comp(g.n_vertices, -1);
    int n_comp = 0;
    for (int v0 = 0; v0 < g.n_vertices; ++v0) {
        if (comp[v0] != -1) continue;
        std::queue<int> q;
        q.push(v0);
        comp[v0] = n_comp;
        while (!q.empty()) {
            const int v = q.front();
            q.pop();
            for (int p = 0; p < 4; ++p) {
                const int h = 4 * v + p;
                if (g.external[h]) continue;
                const int w = g.vertex_of(g.pairing[h]);
                if (comp[w] == -1) {
                    comp[w] = n_comp;
                    q.push(w);
                }
            }
        }
        ++n_comp;
    }
    fd.components = n_comp;
    fd.connected = (n_comp == 1);

    // Euler relation per component: V - E + F = 2 - 2g
    fd.genus = 0;
    for (int c = 0; c < n_comp; ++c) {
        int V = 0, E2 = 0, F = 0;
        for (int v = 0; v < g.n_vertices; ++v)
            if (comp[v] == c) ++V;
        for (int h = 0; h < g.n_half_edges(); ++h)
            if (!g.external[h] && comp[g.vertex_of(h)] == c) ++E2;
        for (const auto& w : fd.faces)
            if (comp[g.vertex_of(w.front())] == c) ++F;
        const int euler = V - E2 / 2 + F;
        fd.genus += (2 - euler) / 2;
    }
    return fd;
}

int divergence_degree(const RibbonGraph& g) {
    const FaceData fd = faces(g);
    return 4 - 2 * g.n_vertices - 4 * fd.genus - 2 * fd.broken;
}

namespace {

// Rooted canonical labeling of one component: vertices are relabeled in
// discovery order and rotated so the entry half-edge sits at position 0;
// the code lists each canonical half-edge's partner (or -1 for external).
std::vector<int> rooted_code(const RibbonGraph& g, int root,
                             const std::vector<int>& comp_vertices) {
    const int nv = static_cast<int>(comp_vertices.size());
    std::vector<int> label(g.n_vertices, -1);    // vertex -> canonical label
    std::vector<int> rot(g.n_vertices, 0);       // entry position
    std::vector<int> order;                      // canonical label -> vertex
    order.reserve(nv);

    auto assign = [&](int dart) {
        const int v = dart / 4;
        label[v] = static_cast<int>(order.size());
        rot[v] = dart % 4;
        order.push_back(v);
    };
    auto canon_id = [&](int dart) {
        const int v = dart / 4;
        return 4 * label[v] + ((dart % 4 - rot[v]) + 4) % 4;
    };

    assign(root);
    std::vector<int> code;
    code.reserve(4 * nv);
    for (int cd = 0; cd < 4 * nv; ++cd) {
        const int v = order[cd / 4];
        const int dart = 4 * v + (cd % 4 + rot[v]) % 4;
        if (g.external[dart]) {
            code.push_back(-1);
            continue;
        }
        const int p = g.pairing[dart];
        if (label[p / 4] == -1) assign(p);
        code.push_back(canon_id(p));
    }
    return code;
}

}  // namespace

std::string canonical_code(const RibbonGraph& g) {
    // component decomposition
    std::vector<int> comp(g.n_vertices, -1);
    int n_comp = 0;
    for (int v0 = 0; v0 < g.n_vertices; ++v0) {
        if (comp[v0] != -1) continue;
        std::queue<int> q;
        q.push(v0);
        comp[v0] = n_comp;
        while (!q.empty()) {
            const int v = q.front();
            q.pop();
            for (int p = 0; p < 4; ++p) {
                const int h = 4 * v + p;
                if (g.external[h]) continue;
                const int w = g.vertex_of(g.pairing[h]);
                if (comp[w] == -1) {
                    comp[w] = n_comp;
                    q.push(w);
                }
            }
        }
        ++n_comp;
    }

    std::vector<std::string> comp_codes;
    for (int c = 0; c < n_comp; ++c) {
        std::vector<int> verts;
        for (int v = 0; v < g.n_vertices; ++v)
            if (comp[v] == c) verts.push_back(v);
        std::vector<int> best;
        for (int v : verts)
            for (int p = 0; p < 4; ++p) {
                std::vector<int> code = rooted_code(g, 4 * v + p, verts);
                if (best.empty() || code < best) best = std::move(code);
            }
        std::string s;
        for (int x : best) {
            s += std::to_string(x);
            s += ',';
        }
        comp_codes.push_back(std::move(s));
    }
    std::sort(comp_codes.begin(), comp_codes.end());
    std::string out;
    for (const auto& s : comp_codes) {
        out += s;
        out += '|';
    }
    return out;
}

namespace {

void enumerate_pairings(std::vector<int>& partner, int H,
                        const std::function<void(const std::vector<int>&)>& sink) {
    int first = -1;
    for (int h = 0; h < H; ++h)
        if (partner[h] == -1) {
            first = h;
            break;
        }
    if (first == -1) {
        sink(partner);
        return;
    }
    for (int h = first + 1; h < H; ++h) {
        if (partner[h] != -1) continue;
        partner[first] = h;
        partner[h] = first;
        enumerate_pairings(partner, H, sink);
        partner[first] = -1;
        partner[h] = -1;
    }
}

}  // namespace

std::vector<GraphClass> enumerate_vacuum_graphs(int order) {
    if (order < 1 || order > 4)
        throw std::invalid_argument(
            "enumerate_vacuum_graphs: order must be 1..4 ((4n-1)!! pairings)");
    const int H = 4 * order;
    std::map<std::string, GraphClass> classes;
    std::vector<int> partner(H, -1);
    enumerate_pairings(partner, H, [&](const std::vector<int>& p) {
        RibbonGraph g;
        g.n_vertices = order;
        g.pairing = p;
        g.external.assign(H, false);
        const std::string code = canonical_code(g);
        auto it = classes.find(code);
        if (it == classes.end()) {
            GraphClass gc;
            gc.representative = g;
            gc.multiplicity = 1;
            gc.code = code;
            classes.emplace(code, std::move(gc));
        } else {
            ++it->second.multiplicity;
        }
    });
    std::vector<GraphClass> out;
    out.reserve(classes.size());
    for (auto& [code, gc] : classes) {
        gc.topology = faces(gc.representative);
        out.push_back(std::move(gc));
    }
    return out;
}

namespace {

// cyclic adjacency on a 4-slot vertex
bool adjacent4(int a, int b) { return (a + 1) % 4 == b || (b + 1) % 4 == a; }

}  // namespace

int two_point_tadpole_multiplicity() {
    // choose the contracted pair among the 4 cyclically ordered fields; the
    // two remaining fields are the external legs. Each nearest-neighbor
    // contraction closes a loop that can hug either ribbon border, and the
    // legs keep the two borders distinguishable.
    int count = 0;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
            if (!adjacent4(a, b)) continue;
            for (int border = 0; border < 2; ++border) ++count;
        }
    return count;
}

int vacuum_order1_multiplicity() {
    // pair up all 4 fields; planar schemes only ({0,1}{2,3} and {0,3}{1,2}).
    // Border assignments of the two loops are identified in mirror pairs by
    // the reflection of the closed vacuum graph: {in,in}, {out,out}, mixed.
    static const std::array<std::array<int, 4>, 3> schemes = {
        std::array<int, 4>{0, 1, 2, 3}, {0, 3, 1, 2}, {0, 2, 1, 3}};
    int count = 0;
    for (const auto& s : schemes) {
        const bool planar = adjacent4(s[0], s[1]) && adjacent4(s[2], s[3]);
        if (!planar) continue;
        std::set<std::pair<int, int>> border_classes;
        for (int b1 = 0; b1 < 2; ++b1)
            for (int b2 = 0; b2 < 2; ++b2)
                border_classes.insert({std::min(b1, b2), std::max(b1, b2)});
        count += static_cast<int>(border_classes.size());
    }
    return count;
}

Order2Multiplicities order2_divergent_multiplicities(int perturb_b) {
    Order2Multiplicities d;

    // Class A: one quartic sigma-vertex; the two planar pair schemes, with
    // each contracted pair hugging either border independently (the marked
    // spine face keeps mirror assignments distinct).
    {
        static const std::array<std::array<int, 4>, 3> schemes = {
            std::array<int, 4>{0, 1, 2, 3}, {0, 3, 1, 2}, {0, 2, 1, 3}};
        for (const auto& s : schemes) {
            if (!(adjacent4(s[0], s[1]) && adjacent4(s[2], s[3]))) continue;
            for (int b1 = 0; b1 < 2; ++b1)
                for (int b2 = 0; b2 < 2; ++b2) ++d.A;
        }
    }

    // Class B: cubic sigma-vertex plus one counterterm insertion. Choose
    // which of the three cyclic sigma fields contracts onto the counterterm;
    // the remaining self-pair and the counterterm loop form a closed vacuum
    // configuration whose border assignments are identified in mirror pairs.
    {
        for (int cross = 0; cross < 3; ++cross) {
            std::set<std::pair<int, int>> border_classes;
            for (int b1 = 0; b1 < 2; ++b1)
                for (int b2 = 0; b2 < 2; ++b2)
                    border_classes.insert({std::min(b1, b2), std::max(b1, b2)});
            d.B += static_cast<int>(border_classes.size());
        }
        d.B += perturb_b;
    }

    // Class C: quadratic sigma-vertex plus two counterterms: the two
    // matchings of sigma fields onto counterterms, with a joint border choice
    // for the pair of attachments.
    {
        for (int matching = 0; matching < 2; ++matching)
            for (int border = 0; border < 2; ++border) ++d.C;
    }

    return d;
}

}  // namespace gw2::ribbon
