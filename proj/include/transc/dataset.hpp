#pragma once

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "transc/core.hpp"
#include "transc/kg.hpp"

namespace transc {

// Simplified TSV export of a raw knowledge base: no count headers, one
// record per line, names not yet interned.
struct RawExport {
    std::vector<std::array<std::string, 3>> relational;    // head, relation, tail
    std::vector<std::array<std::string, 2>> instance_of;   // instance, concept
    std::vector<std::array<std::string, 2>> sub_class_of;  // sub, super
};

namespace detail {

template <std::size_t N>
std::vector<std::array<std::string, N>> load_raw_tsv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    const std::string file = path.filename().string();
    std::vector<std::array<std::string, N>> out;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_tabs(line);
        if (fields.size() != N)
            throw ParseError(file + ":" + std::to_string(lineno) + ": expected " +
                             std::to_string(N) + " fields, got " + std::to_string(fields.size()));
        std::array<std::string, N> rec;
        std::copy(fields.begin(), fields.end(), rec.begin());
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace detail

inline RawExport load_raw_export(const std::filesystem::path& relational_tsv,
                                 const std::filesystem::path& instance_of_tsv,
                                 const std::filesystem::path& sub_class_of_tsv) {
    RawExport raw;
    raw.relational = detail::load_raw_tsv<3>(relational_tsv);
    raw.instance_of = detail::load_raw_tsv<2>(instance_of_tsv);
    raw.sub_class_of = detail::load_raw_tsv<2>(sub_class_of_tsv);
    return raw;
}

// Subset construction: sample relational triples, collect the instances and
// instance relations they mention, keep instanceOf triples whose instance
// survived, collect concepts from those, then keep subClassOf triples with
// both concepts collected. sample_size < 0 keeps every relational triple.
// instanceOf and subClassOf are implicit relations and never enter the
// relation vocabulary. Everything lands in the train split.
inline KnowledgeGraph build_subset(const RawExport& raw, long sample_size, std::uint64_t seed) {
    if (sample_size > static_cast<long>(raw.relational.size()))
        throw DataError("sample_size " + std::to_string(sample_size) +
                        " exceeds raw relational count " + std::to_string(raw.relational.size()));
    if (sample_size < 0) sample_size = static_cast<long>(raw.relational.size());

    std::vector<std::size_t> order(raw.relational.size());
    std::iota(order.begin(), order.end(), 0);
    Rng rng = make_rng(seed, "build-subset");
    std::shuffle(order.begin(), order.end(), rng);
    order.resize(static_cast<std::size_t>(sample_size));
    std::sort(order.begin(), order.end());  // keep raw file order within the sample

    KnowledgeGraph kg;
    std::unordered_set<std::uint64_t> seen_rel, seen_inst, seen_sub;

    for (std::size_t idx : order) {
        const auto& rec = raw.relational[idx];
        RelTriple t;
        t.head = kg.instances.add(rec[0]);
        t.relation = kg.relations.add(rec[1]);
        t.tail = kg.instances.add(rec[2]);
        if (seen_rel.insert(pack_rel(t)).second) kg.relational.train.push_back(t);
    }
    for (const auto& rec : raw.instance_of) {
        int i = kg.instances.find(rec[0]);
        if (i < 0) continue;
        IsaTriple t{i, kg.concepts.add(rec[1])};
        if (seen_inst.insert(pack_isa(t)).second) kg.instance_of.train.push_back(t);
    }
    for (const auto& rec : raw.sub_class_of) {
        int sub = kg.concepts.find(rec[0]);
        int sup = kg.concepts.find(rec[1]);
        if (sub < 0 || sup < 0) continue;
        IsaTriple t{sub, sup};
        if (seen_sub.insert(pack_isa(t)).second) kg.sub_class_of.train.push_back(t);
    }

    kg.rebuild_indexes();
    return kg;
}

struct SplitCounts {
    long relational_valid = 0, relational_test = 0;
    long instance_of_valid = 0, instance_of_test = 0;
    long sub_class_of_valid = 0, sub_class_of_test = 0;

    static SplitCounts from_ratios(const KnowledgeGraph& kg, double valid_ratio,
                                   double test_ratio) {
        SplitCounts c;
        auto part = [&](std::size_t n, long& valid, long& test) {
            valid = static_cast<long>(static_cast<double>(n) * valid_ratio);
            test = static_cast<long>(static_cast<double>(n) * test_ratio);
        };
        part(kg.relational.train.size(), c.relational_valid, c.relational_test);
        part(kg.instance_of.train.size(), c.instance_of_valid, c.instance_of_test);
        part(kg.sub_class_of.train.size(), c.sub_class_of_valid, c.sub_class_of_test);
        return c;
    }
};

// Entities mentioned in valid/test but absent from every training triple.
struct SplitReport {
    long unseen_instances = 0;
    long unseen_concepts = 0;
    long unseen_relations = 0;
};

inline SplitReport split_kg(KnowledgeGraph& kg, const SplitCounts& counts, std::uint64_t seed) {
    Rng rng = make_rng(seed, "split");

    auto carve = [&](auto& splits, long n_valid, long n_test, const char* what) {
        auto pool = std::move(splits.train);
        if (n_valid + n_test > static_cast<long>(pool.size()))
            throw DataError(std::string("split counts exceed ") + what + " pool size " +
                            std::to_string(pool.size()));
        std::shuffle(pool.begin(), pool.end(), rng);
        splits.valid.assign(pool.begin(), pool.begin() + n_valid);
        splits.test.assign(pool.begin() + n_valid, pool.begin() + n_valid + n_test);
        splits.train.assign(pool.begin() + n_valid + n_test, pool.end());
    };
    carve(kg.relational, counts.relational_valid, counts.relational_test, "relational");
    carve(kg.instance_of, counts.instance_of_valid, counts.instance_of_test, "instanceOf");
    carve(kg.sub_class_of, counts.sub_class_of_valid, counts.sub_class_of_test, "subClassOf");
    kg.rebuild_indexes();

    std::unordered_set<int> train_instances, train_concepts, train_relations;
    for (const auto& t : kg.relational.train) {
        train_instances.insert(t.head);
        train_instances.insert(t.tail);
        train_relations.insert(t.relation);
    }
    for (const auto& t : kg.instance_of.train) {
        train_instances.insert(t.sub);
        train_concepts.insert(t.sup);
    }
    for (const auto& t : kg.sub_class_of.train) {
        train_concepts.insert(t.sub);
        train_concepts.insert(t.sup);
    }

    SplitReport report;
    std::unordered_set<int> seen_i, seen_c, seen_r;
    for (SplitId s : {SplitId::Valid, SplitId::Test}) {
        for (const auto& t : kg.relational.at(s)) {
            if (!train_instances.count(t.head)) seen_i.insert(t.head);
            if (!train_instances.count(t.tail)) seen_i.insert(t.tail);
            if (!train_relations.count(t.relation)) seen_r.insert(t.relation);
        }
        for (const auto& t : kg.instance_of.at(s)) {
            if (!train_instances.count(t.sub)) seen_i.insert(t.sub);
            if (!train_concepts.count(t.sup)) seen_c.insert(t.sup);
        }
        for (const auto& t : kg.sub_class_of.at(s)) {
            if (!train_concepts.count(t.sub)) seen_c.insert(t.sub);
            if (!train_concepts.count(t.sup)) seen_c.insert(t.sup);
        }
    }
    report.unseen_instances = static_cast<long>(seen_i.size());
    report.unseen_concepts = static_cast<long>(seen_c.size());
    report.unseen_relations = static_cast<long>(seen_r.size());
    return report;
}

struct MExtensionCounts {
    long instance_of_added = 0;
    long sub_class_of_added = 0;
};

// Augments valid/test isA splits with transitivity-derived triples: a
// held-out (i, instanceOf, c) plus a training (c, subClassOf, c_j) yields
// (i, instanceOf, c_j); analogously one hop up for subClassOf. With
// `to_fixpoint` the derived triples feed back in until closure.
inline MExtensionCounts build_m_extension(KnowledgeGraph& kg, bool to_fixpoint = false) {
    MExtensionCounts counts;

    // train subClassOf adjacency: sub -> supers
    std::unordered_map<int, std::vector<int>> supers;
    for (const auto& t : kg.sub_class_of.train) supers[t.sub].push_back(t.sup);

    // derived triples already recorded in any split are not re-added
    std::unordered_set<std::uint64_t> known_inst, known_sub;
    for (SplitId split : {SplitId::Train, SplitId::Valid, SplitId::Test}) {
        for (const auto& t : kg.instance_of.at(split)) known_inst.insert(pack_isa(t));
        for (const auto& t : kg.sub_class_of.at(split)) known_sub.insert(pack_isa(t));
    }

    for (SplitId split : {SplitId::Valid, SplitId::Test}) {
        {
            auto& triples = kg.instance_of.at(split);
            std::unordered_set<std::uint64_t>& present = known_inst;
            std::size_t frontier_begin = 0;
            do {
                std::size_t frontier_end = triples.size();
                for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
                    IsaTriple t = triples[i];
                    auto it = supers.find(t.sup);
                    if (it == supers.end()) continue;
                    for (int sup : it->second) {
                        IsaTriple derived{t.sub, sup};
                        if (present.insert(pack_isa(derived)).second) {
                            triples.push_back(derived);
                            ++counts.instance_of_added;
                        }
                    }
                }
                frontier_begin = frontier_end;
            } while (to_fixpoint && frontier_begin < triples.size());
        }
        {
            auto& triples = kg.sub_class_of.at(split);
            std::unordered_set<std::uint64_t>& present = known_sub;
            std::size_t frontier_begin = 0;
            do {
                std::size_t frontier_end = triples.size();
                for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
                    IsaTriple t = triples[i];
                    auto it = supers.find(t.sup);
                    if (it == supers.end()) continue;
                    for (int sup : it->second) {
                        IsaTriple derived{t.sub, sup};
                        if (present.insert(pack_isa(derived)).second) {
                            triples.push_back(derived);
                            ++counts.sub_class_of_added;
                        }
                    }
                }
                frontier_begin = frontier_end;
            } while (to_fixpoint && frontier_begin < triples.size());
        }
    }

    kg.rebuild_indexes();
    return counts;
}

}  // namespace transc
