#pragma once

#include "ptfhard/rng.hpp"

#include <string>
#include <vector>

namespace ptfhard {

// Projection game on a regular connected graph: each edge carries one map
// per endpoint from vertex labels {0..k-1} to answers {0..L-1}; a labeling
// satisfies an edge when the two projected answers agree.
struct LcEdge {
    int u = 0;
    int w = 0;
    std::vector<int> pi_u; // size k, values in [0, L)
    std::vector<int> pi_w;
};

struct LabelCoverInstance {
    int nv = 0;
    int k = 0;
    int L = 0;
    std::vector<LcEdge> edges;

    void validate() const; // throws InvalidInputError on malformed data
};

// Vertex -> label, or -1 for unlabeled.
using Labeling = std::vector<int>;

// Fraction of edges with both endpoints labeled and agreeing projections.
double satisfied_fraction(const LabelCoverInstance& inst, const Labeling& labeling);

struct PlantedInstance {
    LabelCoverInstance instance;
    Labeling planted; // total labeling satisfying every edge
};

// Regular connected graph (configuration model with rejection of loops,
// parallel edges, and disconnected outcomes); projections uniform subject
// to agreeing on the planted labels.
PlantedInstance generate_yes_instance(int nv, int degree, int k, int L, Rng& rng);

// Same graph model with fully uniform projections.
LabelCoverInstance generate_random_instance(int nv, int degree, int k, int L, Rng& rng);

// max over vertices v and label pairs i != i' of Pr over edges at v that
// the two labels project to the same answer (0 = perfectly smooth).
struct SmoothnessReport {
    double max_collision_prob = 0;
    int argmax_vertex = -1;
    int argmax_i = -1;
    int argmax_j = -1;
};
SmoothnessReport smoothness_audit(const LabelCoverInstance& inst);

// Checks the edge mass inside a vertex subset against (|S|/|V|)^2 / 2.
struct ExpansionReport {
    double inside_fraction = 0;
    double threshold = 0;
    bool within = false;
};
ExpansionReport weak_expansion_audit(const LabelCoverInstance& inst, const std::vector<int>& subset);

// Exact optimum by enumeration; only for nv <= 8 and k <= 6.
double exhaustive_optimum(const LabelCoverInstance& inst);

bool is_regular(const LabelCoverInstance& inst, int* degree_out = nullptr);
bool is_connected(const LabelCoverInstance& inst);

std::string instance_to_json(const LabelCoverInstance& inst);
LabelCoverInstance instance_from_json(const std::string& text);
std::string labeling_to_json(const Labeling& labeling, int k);
Labeling labeling_from_json(const std::string& text);

void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

} // namespace ptfhard
