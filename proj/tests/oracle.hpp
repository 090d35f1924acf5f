#pragma once

// Independent brute-force implementations used to cross-check the library.
// Everything here recomputes scores with scalar loops, scans splits
// linearly instead of using the hash indexes, and fits thresholds by an
// O(n^2) sweep. Deliberately naive.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "transc/eval.hpp"
#include "transc/geometry.hpp"
#include "transc/kg.hpp"

namespace oracle {

inline double rel_score(const transc::EmbeddingSpace& space, const transc::RelTriple& t) {
    double s = 0.0;
    for (int k = 0; k < space.dim(); ++k) {
        double d = space.instance(t.head)[k] + space.relation(t.relation)[k] -
                   space.instance(t.tail)[k];
        s += d * d;
    }
    return s;
}

inline double inst_score(const transc::EmbeddingSpace& space, const transc::IsaTriple& t) {
    double s = 0.0;
    for (int k = 0; k < space.dim(); ++k) {
        double d = space.instance(t.sub)[k] - space.center(t.sup)[k];
        s += d * d;
    }
    return std::sqrt(s) - space.radius(t.sup);
}

inline double sub_score(const transc::EmbeddingSpace& space, const transc::IsaTriple& t) {
    double s = 0.0;
    for (int k = 0; k < space.dim(); ++k) {
        double d = space.center(t.sub)[k] - space.center(t.sup)[k];
        s += d * d;
    }
    double dist = std::sqrt(s);
    double mi = space.radius(t.sub), mj = space.radius(t.sup);
    if (dist + mj < mi) return mi - mj;  // s_j strictly inside s_i
    return dist + mi - mj;
}

inline bool known_relational(const transc::KnowledgeGraph& kg, const transc::RelTriple& t) {
    using transc::SplitId;
    for (SplitId s : {SplitId::Train, SplitId::Valid, SplitId::Test})
        for (const auto& u : kg.relational.at(s))
            if (u == t) return true;
    return false;
}

// Rank of the true entity: sort the full candidate list, locate the tied
// block holding the true id, take the block's mean position rounded half up.
inline long rank_of(const transc::EmbeddingSpace& space, const transc::KnowledgeGraph& kg,
                    const transc::RelTriple& t, bool replace_head, bool filter) {
    const int true_id = replace_head ? t.head : t.tail;
    std::vector<std::pair<double, int>> list;
    for (int e = 0; e < kg.instances.size(); ++e) {
        transc::RelTriple candidate = t;
        (replace_head ? candidate.head : candidate.tail) = e;
        if (filter && e != true_id && known_relational(kg, candidate)) continue;
        list.emplace_back(rel_score(space, candidate), e);
    }
    std::sort(list.begin(), list.end());
    long first = 0, last = 0;
    for (std::size_t i = 0; i < list.size(); ++i) {
        if (list[i].second == true_id) {
            double s = list[i].first;
            first = static_cast<long>(i);
            while (first > 0 && list[static_cast<std::size_t>(first - 1)].first == s) --first;
            last = static_cast<long>(i);
            while (last + 1 < static_cast<long>(list.size()) &&
                   list[static_cast<std::size_t>(last + 1)].first == s)
                ++last;
            break;
        }
    }
    long p = first + 1, q = last + 1;  // 1-based tied block
    return (p + q + 1) / 2;            // mean rank rounded half up
}

struct LinkPredictionResult {
    double mrr_raw = 0.0, mrr_filter = 0.0;
    std::array<double, 3> hits_raw{}, hits_filter{};
};

inline LinkPredictionResult link_prediction(const transc::EmbeddingSpace& space,
                                            const transc::KnowledgeGraph& kg,
                                            transc::SplitId split) {
    LinkPredictionResult out;
    long n = 0;
    for (const auto& t : kg.relational.at(split)) {
        for (bool head : {true, false}) {
            long raw = rank_of(space, kg, t, head, false);
            long flt = rank_of(space, kg, t, head, true);
            out.mrr_raw += 1.0 / static_cast<double>(raw);
            out.mrr_filter += 1.0 / static_cast<double>(flt);
            const std::array<int, 3> levels{1, 3, 10};
            for (std::size_t i = 0; i < levels.size(); ++i) {
                out.hits_raw[i] += raw <= levels[i];
                out.hits_filter[i] += flt <= levels[i];
            }
            ++n;
        }
    }
    out.mrr_raw /= static_cast<double>(n);
    out.mrr_filter /= static_cast<double>(n);
    for (std::size_t i = 0; i < 3; ++i) {
        out.hits_raw[i] *= 100.0 / static_cast<double>(n);
        out.hits_filter[i] *= 100.0 / static_cast<double>(n);
    }
    return out;
}

// Max achievable accuracy over every threshold, by trying a cut at and just
// above every observed score.
inline double best_threshold_accuracy(const std::vector<std::pair<double, bool>>& scored) {
    double best = 0.0;
    std::vector<double> candidates;
    for (const auto& [s, label] : scored) {
        candidates.push_back(s);
        candidates.push_back(std::nextafter(s, std::numeric_limits<double>::infinity()));
    }
    for (double delta : candidates) {
        long correct = 0;
        for (const auto& [s, label] : scored)
            if ((s < delta) == label) ++correct;
        best = std::max(best, static_cast<double>(correct) / static_cast<double>(scored.size()));
    }
    return best;
}

// Same cut-placement rule as the library (midpoints of consecutive distinct
// scores plus one cut below and above everything, ties toward the smallest
// delta) but evaluated by O(n^2) recounting.
inline double fit_cut(const std::vector<std::pair<double, bool>>& scored) {
    std::vector<double> values;
    for (const auto& [s, label] : scored) values.push_back(s);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());

    std::vector<double> candidates;
    candidates.push_back(values.front() - 1.0);
    for (std::size_t i = 0; i + 1 < values.size(); ++i)
        candidates.push_back(0.5 * (values[i] + values[i + 1]));
    candidates.push_back(values.back() + 1.0);

    double best_delta = candidates.front();
    double best_acc = -1.0;
    for (double delta : candidates) {
        long correct = 0;
        for (const auto& [s, label] : scored)
            if ((s < delta) == label) ++correct;
        double acc = static_cast<double>(correct) / static_cast<double>(scored.size());
        if (acc > best_acc) {  // strict: keeps the smallest optimal delta
            best_acc = acc;
            best_delta = delta;
        }
    }
    return best_delta;
}

struct Metrics {
    double accuracy = 0.0, precision = 0.0, recall = 0.0, f1 = 0.0;
};

inline Metrics tally(const std::vector<std::pair<double, bool>>& scored, double delta) {
    long tp = 0, fp = 0, tn = 0, fn = 0;
    for (const auto& [s, label] : scored) {
        bool predicted = s < delta;
        if (label && predicted) ++tp;
        if (label && !predicted) ++fn;
        if (!label && predicted) ++fp;
        if (!label && !predicted) ++tn;
    }
    Metrics m;
    long n = tp + fp + tn + fn;
    m.accuracy = 100.0 * static_cast<double>(tp + tn) / static_cast<double>(n);
    m.precision = tp + fp ? 100.0 * static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
    m.recall = tp + fn ? 100.0 * static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
    m.f1 = m.precision + m.recall > 0.0
               ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
               : 0.0;
    return m;
}

struct ClassificationResult {
    Metrics relational, instance_of, sub_class_of;
};

inline ClassificationResult triple_classification(const transc::EmbeddingSpace& space,
                                                  const transc::KnowledgeGraph& kg,
                                                  const transc::EvalNegatives& negs) {
    ClassificationResult out;
    using transc::SplitId;

    {
        // per-relation thresholds from valid, applied to test
        std::vector<std::pair<double, bool>> all_valid;
        std::vector<std::vector<std::pair<double, bool>>> valid(
            static_cast<std::size_t>(kg.relations.size()));
        for (const auto& t : kg.relational.valid) {
            valid[static_cast<std::size_t>(t.relation)].emplace_back(rel_score(space, t), true);
            all_valid.emplace_back(rel_score(space, t), true);
        }
        for (const auto& t : negs.relational.valid) {
            valid[static_cast<std::size_t>(t.relation)].emplace_back(rel_score(space, t), false);
            all_valid.emplace_back(rel_score(space, t), false);
        }
        std::vector<double> sorted;
        for (const auto& [s, l] : all_valid) sorted.push_back(s);
        std::sort(sorted.begin(), sorted.end());
        double global_median =
            sorted.size() % 2 ? sorted[sorted.size() / 2]
                              : 0.5 * (sorted[sorted.size() / 2 - 1] + sorted[sorted.size() / 2]);
        std::vector<double> delta(static_cast<std::size_t>(kg.relations.size()), global_median);
        for (int r = 0; r < kg.relations.size(); ++r)
            if (!valid[static_cast<std::size_t>(r)].empty())
                delta[static_cast<std::size_t>(r)] = fit_cut(valid[static_cast<std::size_t>(r)]);

        std::vector<std::pair<double, bool>> test;
        std::vector<int> test_rel;
        for (const auto& t : kg.relational.test) {
            test.emplace_back(rel_score(space, t), true);
            test_rel.push_back(t.relation);
        }
        for (const auto& t : negs.relational.test) {
            test.emplace_back(rel_score(space, t), false);
            test_rel.push_back(t.relation);
        }
        long tp = 0, fp = 0, tn = 0, fn = 0;
        for (std::size_t i = 0; i < test.size(); ++i) {
            bool predicted = test[i].first < delta[static_cast<std::size_t>(test_rel[i])];
            if (test[i].second && predicted) ++tp;
            if (test[i].second && !predicted) ++fn;
            if (!test[i].second && predicted) ++fp;
            if (!test[i].second && !predicted) ++tn;
        }
        out.relational.accuracy = 100.0 * static_cast<double>(tp + tn) /
                                  static_cast<double>(tp + fp + tn + fn);
        out.relational.precision =
            tp + fp ? 100.0 * static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
        out.relational.recall =
            tp + fn ? 100.0 * static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
        out.relational.f1 = out.relational.precision + out.relational.recall > 0.0
                                ? 2.0 * out.relational.precision * out.relational.recall /
                                      (out.relational.precision + out.relational.recall)
                                : 0.0;
    }

    auto isa_metrics = [&](const std::vector<transc::IsaTriple>& valid_pos,
                           const std::vector<transc::IsaTriple>& valid_neg,
                           const std::vector<transc::IsaTriple>& test_pos,
                           const std::vector<transc::IsaTriple>& test_neg, auto&& scorer) {
        std::vector<std::pair<double, bool>> valid, test;
        for (const auto& t : valid_pos) valid.emplace_back(scorer(t), true);
        for (const auto& t : valid_neg) valid.emplace_back(scorer(t), false);
        for (const auto& t : test_pos) test.emplace_back(scorer(t), true);
        for (const auto& t : test_neg) test.emplace_back(scorer(t), false);
        double delta = valid.empty() ? 0.0 : fit_cut(valid);
        return tally(test, delta);
    };
    out.instance_of = isa_metrics(kg.instance_of.valid, negs.instance_of.valid,
                                  kg.instance_of.test, negs.instance_of.test,
                                  [&](const transc::IsaTriple& t) { return inst_score(space, t); });
    out.sub_class_of = isa_metrics(kg.sub_class_of.valid, negs.sub_class_of.valid,
                                   kg.sub_class_of.test, negs.sub_class_of.test,
                                   [&](const transc::IsaTriple& t) { return sub_score(space, t); });
    return out;
}

}  // namespace oracle
