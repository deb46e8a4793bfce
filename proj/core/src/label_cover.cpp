#include "ptfhard/label_cover.hpp"

#include "ptfhard/errors.hpp"

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>

namespace ptfhard {

using nlohmann::json;

void LabelCoverInstance::validate() const {
    if (nv < 1 || k < 1 || L < 1) throw InvalidInputError("instance sizes must be positive");
    if (k < L) throw InvalidInputError("need k >= L");
    for (const auto& e : edges) {
        if (e.u < 0 || e.u >= nv || e.w < 0 || e.w >= nv || e.u == e.w)
            throw InvalidInputError("edge endpoint out of range");
        if (static_cast<int>(e.pi_u.size()) != k || static_cast<int>(e.pi_w.size()) != k)
            throw InvalidInputError("projection arity != k");
        for (int x : e.pi_u)
            if (x < 0 || x >= L) throw InvalidInputError("projection value out of range");
        for (int x : e.pi_w)
            if (x < 0 || x >= L) throw InvalidInputError("projection value out of range");
    }
}

double satisfied_fraction(const LabelCoverInstance& inst, const Labeling& labeling) {
    if (static_cast<int>(labeling.size()) != inst.nv)
        throw InvalidInputError("labeling size != vertex count");
    for (int l : labeling)
        if (l < -1 || l >= inst.k) throw InvalidInputError("label out of range");
    if (inst.edges.empty()) return 0.0;
    int sat = 0;
    for (const auto& e : inst.edges) {
        const int lu = labeling[e.u], lw = labeling[e.w];
        if (lu >= 0 && lw >= 0 && e.pi_u[lu] == e.pi_w[lw]) ++sat;
    }
    return static_cast<double>(sat) / inst.edges.size();
}

namespace {

// Configuration model: pair degree stubs per vertex, rejecting loops and
// parallel edges, then reject disconnected graphs.
std::vector<std::pair<int, int>> regular_graph(int nv, int degree, Rng& rng) {
    if (nv < 2 || degree < 1) throw InvalidInputError("need nv >= 2 and degree >= 1");
    if (degree >= nv) throw InvalidInputError("degree must be < nv for a simple graph");
    if ((static_cast<long long>(nv) * degree) % 2 != 0)
        throw InvalidInputError("nv * degree must be even");
    std::vector<int> stubs;
    stubs.reserve(static_cast<std::size_t>(nv) * degree);
    for (int v = 0; v < nv; ++v)
        for (int d = 0; d < degree; ++d) stubs.push_back(v);

    for (int attempt = 0; attempt < 20000; ++attempt) {
        const auto perm = rng.permutation(static_cast<int>(stubs.size()));
        std::vector<std::pair<int, int>> edges;
        std::set<std::pair<int, int>> seen;
        bool ok = true;
        for (std::size_t i = 0; i + 1 < perm.size() && ok; i += 2) {
            int a = stubs[perm[i]], b = stubs[perm[i + 1]];
            if (a == b) ok = false;
            if (a > b) std::swap(a, b);
            if (ok && !seen.insert({a, b}).second) ok = false;
            if (ok) edges.emplace_back(a, b);
        }
        if (!ok) continue;
        // connectivity
        std::vector<std::vector<int>> adj(nv);
        for (const auto& [a, b] : edges) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        std::vector<char> vis(nv, 0);
        std::queue<int> q;
        q.push(0);
        vis[0] = 1;
        int count = 1;
        while (!q.empty()) {
            const int v = q.front();
            q.pop();
            for (int x : adj[v])
                if (!vis[x]) {
                    vis[x] = 1;
                    ++count;
                    q.push(x);
                }
        }
        if (count == nv) return edges;
    }
    throw InvalidInputError("could not sample a connected regular graph");
}

} // namespace

PlantedInstance generate_yes_instance(int nv, int degree, int k, int L, Rng& rng) {
    PlantedInstance out;
    out.instance.nv = nv;
    out.instance.k = k;
    out.instance.L = L;
    out.planted.resize(nv);
    for (int v = 0; v < nv; ++v) out.planted[v] = static_cast<int>(rng.uniform_int(k));
    for (const auto& [a, b] : regular_graph(nv, degree, rng)) {
        LcEdge e;
        e.u = a;
        e.w = b;
        e.pi_u.resize(k);
        e.pi_w.resize(k);
        for (int i = 0; i < k; ++i) {
            e.pi_u[i] = static_cast<int>(rng.uniform_int(L));
            e.pi_w[i] = static_cast<int>(rng.uniform_int(L));
        }
        const int common = static_cast<int>(rng.uniform_int(L));
        e.pi_u[out.planted[a]] = common;
        e.pi_w[out.planted[b]] = common;
        out.instance.edges.push_back(std::move(e));
    }
    out.instance.validate();
    return out;
}

LabelCoverInstance generate_random_instance(int nv, int degree, int k, int L, Rng& rng) {
    LabelCoverInstance inst;
    inst.nv = nv;
    inst.k = k;
    inst.L = L;
    for (const auto& [a, b] : regular_graph(nv, degree, rng)) {
        LcEdge e;
        e.u = a;
        e.w = b;
        e.pi_u.resize(k);
        e.pi_w.resize(k);
        for (int i = 0; i < k; ++i) {
            e.pi_u[i] = static_cast<int>(rng.uniform_int(L));
            e.pi_w[i] = static_cast<int>(rng.uniform_int(L));
        }
        inst.edges.push_back(std::move(e));
    }
    inst.validate();
    return inst;
}

SmoothnessReport smoothness_audit(const LabelCoverInstance& inst) {
    inst.validate();
    std::vector<std::vector<std::pair<const std::vector<int>*, int>>> incident(inst.nv);
    for (const auto& e : inst.edges) {
        incident[e.u].push_back({&e.pi_u, 0});
        incident[e.w].push_back({&e.pi_w, 0});
    }
    SmoothnessReport rep;
    for (int v = 0; v < inst.nv; ++v) {
        if (incident[v].empty()) continue;
        for (int i = 0; i < inst.k; ++i)
            for (int j = i + 1; j < inst.k; ++j) {
                int coll = 0;
                for (const auto& [pi, _] : incident[v])
                    if ((*pi)[i] == (*pi)[j]) ++coll;
                const double p = static_cast<double>(coll) / incident[v].size();
                if (p > rep.max_collision_prob) {
                    rep.max_collision_prob = p;
                    rep.argmax_vertex = v;
                    rep.argmax_i = i;
                    rep.argmax_j = j;
                }
            }
    }
    return rep;
}

ExpansionReport weak_expansion_audit(const LabelCoverInstance& inst, const std::vector<int>& subset) {
    inst.validate();
    std::vector<char> in(inst.nv, 0);
    for (int v : subset) {
        if (v < 0 || v >= inst.nv) throw InvalidInputError("subset vertex out of range");
        in[v] = 1;
    }
    int inside = 0;
    for (const auto& e : inst.edges)
        if (in[e.u] && in[e.w]) ++inside;
    ExpansionReport rep;
    rep.inside_fraction = inst.edges.empty() ? 0.0 : static_cast<double>(inside) / inst.edges.size();
    const double delta = static_cast<double>(subset.size()) / inst.nv;
    rep.threshold = delta * delta / 2.0;
    rep.within = rep.inside_fraction <= rep.threshold;
    return rep;
}

double exhaustive_optimum(const LabelCoverInstance& inst) {
    inst.validate();
    if (inst.nv > 8 || inst.k > 6)
        throw InvalidInputError("exhaustive optimum limited to nv <= 8, k <= 6");
    Labeling lab(inst.nv, 0);
    double best = 0.0;
    for (;;) {
        best = std::max(best, satisfied_fraction(inst, lab));
        int pos = 0;
        while (pos < inst.nv) {
            if (++lab[pos] < inst.k) break;
            lab[pos++] = 0;
        }
        if (pos == inst.nv) break;
    }
    return best;
}

bool is_regular(const LabelCoverInstance& inst, int* degree_out) {
    std::vector<int> deg(inst.nv, 0);
    for (const auto& e : inst.edges) {
        ++deg[e.u];
        ++deg[e.w];
    }
    for (int v = 1; v < inst.nv; ++v)
        if (deg[v] != deg[0]) return false;
    if (degree_out) *degree_out = inst.nv ? deg[0] : 0;
    return true;
}

bool is_connected(const LabelCoverInstance& inst) {
    if (inst.nv == 0) return false;
    std::vector<std::vector<int>> adj(inst.nv);
    for (const auto& e : inst.edges) {
        adj[e.u].push_back(e.w);
        adj[e.w].push_back(e.u);
    }
    std::vector<char> vis(inst.nv, 0);
    std::queue<int> q;
    q.push(0);
    vis[0] = 1;
    int count = 1;
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        for (int x : adj[v])
            if (!vis[x]) {
                vis[x] = 1;
                ++count;
                q.push(x);
            }
    }
    return count == inst.nv;
}

std::string instance_to_json(const LabelCoverInstance& inst) {
    json j;
    j["k"] = inst.k;
    j["L"] = inst.L;
    j["vertices"] = json::array();
    for (int v = 0; v < inst.nv; ++v) j["vertices"].push_back(v);
    j["edges"] = json::array();
    for (const auto& e : inst.edges)
        j["edges"].push_back({{"u", e.u}, {"w", e.w}, {"pi_u", e.pi_u}, {"pi_w", e.pi_w}});
    return j.dump(2) + "\n";
}

LabelCoverInstance instance_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& ex) {
        throw InvalidInputError(std::string("bad instance JSON: ") + ex.what());
    }
    LabelCoverInstance inst;
    try {
        inst.k = j.at("k").get<int>();
        inst.L = j.at("L").get<int>();
        inst.nv = static_cast<int>(j.at("vertices").size());
        for (const auto& je : j.at("edges")) {
            LcEdge e;
            e.u = je.at("u").get<int>();
            e.w = je.at("w").get<int>();
            e.pi_u = je.at("pi_u").get<std::vector<int>>();
            e.pi_w = je.at("pi_w").get<std::vector<int>>();
            inst.edges.push_back(std::move(e));
        }
    } catch (const json::exception& ex) {
        throw InvalidInputError(std::string("bad instance JSON: ") + ex.what());
    }
    inst.validate();
    return inst;
}

std::string labeling_to_json(const Labeling& labeling, int k) {
    json j;
    j["k"] = k;
    j["labels"] = labeling;
    return j.dump(2) + "\n";
}

Labeling labeling_from_json(const std::string& text) {
    try {
        const json j = json::parse(text);
        return j.at("labels").get<Labeling>();
    } catch (const json::exception& ex) {
        throw InvalidInputError(std::string("bad labeling JSON: ") + ex.what());
    }
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidInputError("cannot open for write: " + path);
    f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!f) throw InvalidInputError("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InvalidInputError("cannot open: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace ptfhard
