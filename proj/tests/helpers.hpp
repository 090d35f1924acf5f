#pragma once

// Shared fixtures for the unit and acceptance suites.

#include <random>
#include <set>
#include <string>
#include <vector>

#include "transc/kg.hpp"
#include "transc/training.hpp"

namespace fixtures {

// Three-level concept tree plus one off-tree concept: 1 root, 3 mid-level
// concepts, 8 leaves, 1 outlier (13 concepts); 100 instances (88 on the
// leaves, 12 under the outlier), 5 relations whose edges follow the leaf
// structure. Roughly 1,500 triples in total.
//
// Split design rules that make the fixture learnable and fairly evaluable:
//  - every evaluated true triple is recorded in some split (directly or via
//    the transitive extension), so evaluation negatives are genuinely false;
//  - held-out instances and held-out sub-concepts are invisible to the
//    train-built sibling pools, so typed negative draws cannot repeatedly
//    hit held-out true triples and train them down;
//  - no subClassOf triple touches the root: with margin-ranking training,
//    the top position has no false sub-side candidates, so its corruptions
//    inevitably push true-but-unrecorded triples apart. Leaving the root
//    untrained parks it at a random far-away sphere, which makes any
//    (x, root) triple drawn as an evaluation negative score high and land
//    on the correct side of the threshold;
//  - held-out instanceOf instances sit on leaves whose mid edge trains, so
//    the one-hop extension derives exactly their (i, mid) membership;
//  - relation 0 links instances within the same leaf, so instances with no
//    training membership still get pulled into their leaf cluster from both
//    the head and the tail side of relational triples.
inline transc::KnowledgeGraph make_tree_kg(std::uint64_t seed = 7) {
    using namespace transc;
    KnowledgeGraph kg;

    int root = kg.concepts.add("root");
    std::vector<int> mids, leaves;
    for (int m = 0; m < 3; ++m) mids.push_back(kg.concepts.add("mid" + std::to_string(m)));
    for (int l = 0; l < 8; ++l) leaves.push_back(kg.concepts.add("leaf" + std::to_string(l)));
    int outlier = kg.concepts.add("outlier");

    const int num_tree = 88, num_instances = 100;
    std::vector<int> inst, inst_leaf;
    for (int i = 0; i < num_instances; ++i) {
        inst.push_back(kg.instances.add("i" + std::to_string(i)));
        inst_leaf.push_back(i < num_tree ? i % 8 : -1);
    }
    for (int r = 0; r < 5; ++r) kg.relations.add("r" + std::to_string(r));

    auto mid_of_leaf = [](int leaf) { return leaf / 3; };  // 0-2 -> 0, 3-5 -> 1, 6-7 -> 2

    // Both memberships held out (leaf membership split, mid membership left
    // to the extension); all on leaves 1 and 4, whose mid edge trains.
    const std::set<int> full_valid{57, 60, 65}, full_test{68, 73, 76};
    // Leaf membership held out, mid membership still trains.
    const std::set<int> leaf_valid{49, 50, 52}, leaf_test{53, 55, 58};

    for (int i = 0; i < num_tree; ++i) {
        IsaTriple leaf_triple{inst[i], leaves[inst_leaf[i]]};
        IsaTriple mid_triple{inst[i], mids[mid_of_leaf(inst_leaf[i])]};
        if (full_valid.count(i)) {
            kg.instance_of.valid.push_back(leaf_triple);
        } else if (full_test.count(i)) {
            kg.instance_of.test.push_back(leaf_triple);
        } else if (leaf_valid.count(i)) {
            kg.instance_of.valid.push_back(leaf_triple);
            kg.instance_of.train.push_back(mid_triple);
        } else if (leaf_test.count(i)) {
            kg.instance_of.test.push_back(leaf_triple);
            kg.instance_of.train.push_back(mid_triple);
        } else {
            kg.instance_of.train.push_back(leaf_triple);
            kg.instance_of.train.push_back(mid_triple);
        }
    }
    for (int i = num_tree; i < num_instances; ++i)
        kg.instance_of.train.push_back({inst[i], outlier});

    // subClassOf: the leaf->mid edges of leaves 1 and 4 train (they carry
    // the extension for the fully held-out instances above); the other six
    // leaf->mid edges are the valid/test material. The root stays untrained
    // on purpose (see the note above). Unused `root` kept for the id layout.
    (void)root;
    kg.sub_class_of.train.push_back({leaves[1], mids[mid_of_leaf(1)]});
    kg.sub_class_of.train.push_back({leaves[4], mids[mid_of_leaf(4)]});
    kg.sub_class_of.valid.push_back({leaves[2], mids[mid_of_leaf(2)]});
    for (int l : {0, 3, 5, 6, 7})
        kg.sub_class_of.test.push_back({leaves[l], mids[mid_of_leaf(l)]});

    // Relational structure: complete blocks between leaf pairs. Recording
    // every head/tail combination of a block keeps the recorded triples
    // closed under the sampler's sibling substitutions, so typed negative
    // draws land on genuinely-false cross-cluster pairs instead of pushing
    // unrecorded same-cluster pairs apart; a complete bipartite block also
    // collapses the head cluster onto (tail centroid - r), which is what
    // gives instances with no training membership a well-defined position.
    Rng rng(seed);
    std::vector<std::vector<int>> group(9);  // leaves 0-7 plus the outlier cluster
    for (int i = 0; i < num_instances; ++i)
        group[static_cast<std::size_t>(i < num_tree ? inst_leaf[i] : 8)].push_back(inst[i]);
    std::vector<RelTriple> relational;
    auto block = [&](int r, int from, int to) {
        for (int h : group[static_cast<std::size_t>(from)])
            for (int t : group[static_cast<std::size_t>(to)])
                if (h != t) relational.push_back({h, t, r});
    };
    // relation 0: same cluster, on every leaf that carries held-out
    // instances plus the outlier cluster
    for (int g : {1, 2, 4, 5, 7, 8}) block(0, g, g);
    block(1, 0, 1);  // relations 1-4 chain the leaves under each mid, so a
    block(2, 1, 2);  // mid's members form one compact region
    block(3, 3, 4);
    block(4, 4, 5);
    block(4, 6, 7);
    std::shuffle(relational.begin(), relational.end(), rng);
    for (std::size_t i = 0; i < relational.size(); ++i) {
        if (i < 40)
            kg.relational.valid.push_back(relational[i]);
        else if (i < 80)
            kg.relational.test.push_back(relational[i]);
        else
            kg.relational.train.push_back(relational[i]);
    }

    kg.rebuild_indexes();
    return kg;
}

// Random small KG for oracle-equivalence tests: |I| <= 20, |C| <= 8.
inline transc::KnowledgeGraph make_random_kg(transc::Rng& rng) {
    using namespace transc;
    KnowledgeGraph kg;
    std::uniform_int_distribution<int> ni_d(8, 20), nc_d(4, 8), nr_d(1, 4);
    const int ni = ni_d(rng), nc = nc_d(rng), nr = nr_d(rng);
    for (int i = 0; i < ni; ++i) kg.instances.add("e" + std::to_string(i));
    for (int c = 0; c < nc; ++c) kg.concepts.add("c" + std::to_string(c));
    for (int r = 0; r < nr; ++r) kg.relations.add("r" + std::to_string(r));

    std::uniform_int_distribution<int> pick_i(0, ni - 1), pick_c(0, nc - 1), pick_r(0, nr - 1);
    std::set<std::uint64_t> rel_seen, inst_seen, sub_seen;

    auto add_rel = [&](std::vector<RelTriple>& dst) {
        for (int attempt = 0; attempt < 50; ++attempt) {
            RelTriple t{pick_i(rng), pick_i(rng), pick_r(rng)};
            if (rel_seen.insert(pack_rel(t)).second) {
                dst.push_back(t);
                return;
            }
        }
    };
    auto add_isa = [&](std::vector<IsaTriple>& dst, std::set<std::uint64_t>& seen, auto&& sub_pick,
                       auto&& sup_pick) {
        for (int attempt = 0; attempt < 50; ++attempt) {
            IsaTriple t{sub_pick(rng), sup_pick(rng)};
            if (seen.insert(pack_isa(t)).second) {
                dst.push_back(t);
                return;
            }
        }
    };

    // densities stay well below saturation of the respective pair spaces so
    // negative generation always has candidates left
    const int rel_train = std::min(3 * ni, ni * ni * nr / 3);
    for (int k = 0; k < rel_train; ++k) add_rel(kg.relational.train);
    for (int k = 0; k < 6; ++k) add_rel(kg.relational.valid);
    for (int k = 0; k < 6; ++k) add_rel(kg.relational.test);
    for (int k = 0; k < ni; ++k) add_isa(kg.instance_of.train, inst_seen, pick_i, pick_c);
    for (int k = 0; k < 3; ++k) add_isa(kg.instance_of.valid, inst_seen, pick_i, pick_c);
    for (int k = 0; k < 3; ++k) add_isa(kg.instance_of.test, inst_seen, pick_i, pick_c);
    for (int k = 0; k < nc - 1; ++k) add_isa(kg.sub_class_of.train, sub_seen, pick_c, pick_c);
    for (int k = 0; k < 2; ++k) add_isa(kg.sub_class_of.valid, sub_seen, pick_c, pick_c);
    for (int k = 0; k < 2; ++k) add_isa(kg.sub_class_of.test, sub_seen, pick_c, pick_c);

    kg.rebuild_indexes();
    return kg;
}

inline transc::EmbeddingSpace make_random_space(const transc::KnowledgeGraph& kg, int dim,
                                                transc::Rng& rng) {
    transc::TrainConfig config;
    config.dim = dim;
    return transc::init_space(kg.instances.size(), kg.concepts.size(), kg.relations.size(), config,
                              rng);
}

}  // namespace fixtures
