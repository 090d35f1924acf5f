#pragma once

#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "transc/core.hpp"
#include "transc/kg.hpp"

namespace transc {

enum class Strategy { Unif, Bern };

inline Strategy parse_strategy(const std::string& s) {
    if (s == "unif") return Strategy::Unif;
    if (s == "bern") return Strategy::Bern;
    throw DataError("unknown sampling strategy '" + s + "' (expected unif or bern)");
}

// Per-relation probability of corrupting the head, tph/(tph+hpt).
// Relations with no training triples default to 0.5.
struct BernTable {
    std::vector<double> replace_head_prob;
};

inline BernTable build_bern_table(const KnowledgeGraph& kg) {
    const int nr = kg.relations.size();
    std::vector<std::unordered_set<int>> heads(static_cast<std::size_t>(nr)),
        tails(static_cast<std::size_t>(nr));
    std::vector<long> counts(static_cast<std::size_t>(nr), 0);
    for (const auto& t : kg.relational.train) {
        auto r = static_cast<std::size_t>(t.relation);
        heads[r].insert(t.head);
        tails[r].insert(t.tail);
        ++counts[r];
    }
    BernTable table;
    table.replace_head_prob.assign(static_cast<std::size_t>(nr), 0.5);
    for (std::size_t r = 0; r < static_cast<std::size_t>(nr); ++r) {
        if (counts[r] == 0) continue;
        double tph = static_cast<double>(counts[r]) / static_cast<double>(heads[r].size());
        double hpt = static_cast<double>(counts[r]) / static_cast<double>(tails[r].size());
        table.replace_head_prob[r] = tph / (tph + hpt);
    }
    return table;
}

enum class CorruptSide { Head, Tail };

// Negative-triple generator. Replacements come from the typed sibling pool
// of the replaced element (instances sharing a concept; concepts sharing a
// super-concept), falling back to the full id space when the pool is empty
// or when every pool draw keeps hitting training triples. Only when the
// fallback also exhausts its rejection budget does sampling give up.
class Sampler {
public:
    static constexpr int kMaxAttempts = 100;
    static constexpr int kPoolAttempts = kMaxAttempts / 2;

    Sampler(const KnowledgeGraph& kg, Strategy strategy)
        : kg_(kg), strategy_(strategy), bern_(build_bern_table(kg)) {}

    Strategy strategy() const { return strategy_; }
    const BernTable& bern_table() const { return bern_; }

    RelTriple corrupt_relational(const RelTriple& t, Rng& rng) const {
        double p = strategy_ == Strategy::Bern
                       ? bern_.replace_head_prob[static_cast<std::size_t>(t.relation)]
                       : 0.5;
        CorruptSide side = std::bernoulli_distribution(p)(rng) ? CorruptSide::Head : CorruptSide::Tail;
        return corrupt_relational(t, side, rng);
    }

    RelTriple corrupt_relational(const RelTriple& t, CorruptSide side, Rng& rng) const {
        const int replaced = side == CorruptSide::Head ? t.head : t.tail;
        auto pool_concepts = instance_pool_concepts(replaced);
        for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
            int candidate = attempt < kPoolAttempts ? draw_instance(pool_concepts, rng)
                                                    : uniform_instance(rng);
            if (candidate == replaced) continue;
            RelTriple neg = t;
            (side == CorruptSide::Head ? neg.head : neg.tail) = candidate;
            if (!kg_.rel_train.count(pack_rel(neg))) return neg;
        }
        throw SamplingExhausted("relational corruption exhausted for (" + std::to_string(t.head) +
                                ", " + std::to_string(t.relation) + ", " + std::to_string(t.tail) + ")");
    }

    IsaTriple corrupt_instance_of(const IsaTriple& t, Rng& rng) const {
        CorruptSide side =
            std::bernoulli_distribution(0.5)(rng) ? CorruptSide::Head : CorruptSide::Tail;
        return corrupt_instance_of(t, side, rng);
    }

    // Head side replaces the instance, tail side the concept.
    IsaTriple corrupt_instance_of(const IsaTriple& t, CorruptSide side, Rng& rng) const {
        if (side == CorruptSide::Head) {
            auto pool_concepts = instance_pool_concepts(t.sub);
            for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
                int candidate = attempt < kPoolAttempts ? draw_instance(pool_concepts, rng)
                                                        : uniform_instance(rng);
                if (candidate == t.sub) continue;
                IsaTriple neg{candidate, t.sup};
                if (!kg_.inst_train.count(pack_isa(neg))) return neg;
            }
        } else {
            for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
                int candidate = attempt < kPoolAttempts ? draw_concept(t.sup, rng)
                                                        : uniform_concept(rng);
                if (candidate == t.sup) continue;
                IsaTriple neg{t.sub, candidate};
                if (!kg_.inst_train.count(pack_isa(neg))) return neg;
            }
        }
        throw SamplingExhausted("instanceOf corruption exhausted for (" + std::to_string(t.sub) +
                                ", " + std::to_string(t.sup) + ")");
    }

    IsaTriple corrupt_sub_class_of(const IsaTriple& t, Rng& rng) const {
        CorruptSide side =
            std::bernoulli_distribution(0.5)(rng) ? CorruptSide::Head : CorruptSide::Tail;
        return corrupt_sub_class_of(t, side, rng);
    }

    IsaTriple corrupt_sub_class_of(const IsaTriple& t, CorruptSide side, Rng& rng) const {
        const int replaced = side == CorruptSide::Head ? t.sub : t.sup;
        for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
            int candidate = attempt < kPoolAttempts ? draw_concept(replaced, rng)
                                                    : uniform_concept(rng);
            if (candidate == replaced) continue;
            IsaTriple neg = t;
            (side == CorruptSide::Head ? neg.sub : neg.sup) = candidate;
            if (!kg_.sub_train.count(pack_isa(neg))) return neg;
        }
        throw SamplingExhausted("subClassOf corruption exhausted for (" + std::to_string(t.sub) +
                                ", " + std::to_string(t.sup) + ")");
    }

private:
    // Concepts of `instance` that hold at least one other member; empty
    // means the typed pool is empty and the full instance set is used.
    std::vector<int> instance_pool_concepts(int instance) const {
        std::vector<int> eligible;
        for (int c : kg_.instance_concepts[static_cast<std::size_t>(instance)])
            if (kg_.concept_members[static_cast<std::size_t>(c)].size() > 1) eligible.push_back(c);
        return eligible;
    }

    int uniform_instance(Rng& rng) const {
        return std::uniform_int_distribution<int>(0, kg_.instances.size() - 1)(rng);
    }

    int uniform_concept(Rng& rng) const {
        return std::uniform_int_distribution<int>(0, kg_.concepts.size() - 1)(rng);
    }

    int draw_instance(const std::vector<int>& pool_concepts, Rng& rng) const {
        if (pool_concepts.empty()) return uniform_instance(rng);
        int c = pool_concepts[std::uniform_int_distribution<std::size_t>(
            0, pool_concepts.size() - 1)(rng)];
        const auto& members = kg_.concept_members[static_cast<std::size_t>(c)];
        return members[std::uniform_int_distribution<std::size_t>(0, members.size() - 1)(rng)];
    }

    // Same-super-concept sibling pool; uniform over all concepts when empty.
    int draw_concept(int concept_id, Rng& rng) const {
        std::vector<int> eligible;
        for (int sup : kg_.concept_supers[static_cast<std::size_t>(concept_id)])
            if (kg_.super_subs[static_cast<std::size_t>(sup)].size() > 1) eligible.push_back(sup);
        if (eligible.empty()) return uniform_concept(rng);
        int sup = eligible[std::uniform_int_distribution<std::size_t>(0, eligible.size() - 1)(rng)];
        const auto& subs = kg_.super_subs[static_cast<std::size_t>(sup)];
        return subs[std::uniform_int_distribution<std::size_t>(0, subs.size() - 1)(rng)];
    }

    const KnowledgeGraph& kg_;
    Strategy strategy_;
    BernTable bern_;
};

}  // namespace transc
