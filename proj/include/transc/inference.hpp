#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <thread>
#include <vector>

#include "transc/core.hpp"
#include "transc/geometry.hpp"
#include "transc/kg.hpp"

namespace transc {

struct InferredTriple {
    int sub = 0;  // instance (instanceOf) or sub-concept (subClassOf)
    int sup = 0;  // concept
    double score = 0.0;
};

namespace detail {

inline void sort_inferred(std::vector<InferredTriple>& out) {
    std::sort(out.begin(), out.end(), [](const InferredTriple& a, const InferredTriple& b) {
        if (a.score != b.score) return a.score < b.score;
        if (a.sub != b.sub) return a.sub < b.sub;
        return a.sup < b.sup;
    });
}

template <typename Fn>
void parallel_chunks(int n, int threads, std::vector<std::vector<InferredTriple>>& buckets,
                     Fn&& fn) {
    buckets.assign(static_cast<std::size_t>(std::max(threads, 1)), {});
    if (threads <= 1) {
        fn(0, n, buckets[0]);
        return;
    }
    std::vector<std::thread> pool;
    int chunk = (n + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
        int begin = w * chunk;
        int end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&, w, begin, end]() { fn(begin, end, buckets[static_cast<std::size_t>(w)]); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace detail

// All (instance, concept) pairs with f_e <= -slack that are not already
// known triples, sorted by score ascending. A negative slack loosens the
// containment test, e.g. to reuse a threshold calibrated on a valid split.
inline std::vector<InferredTriple> infer_instance_of(const EmbeddingSpace& space,
                                                     const KnowledgeGraph& kg, double slack = 0.0,
                                                     int threads = 1) {
    std::vector<std::vector<InferredTriple>> buckets;
    detail::parallel_chunks(kg.instances.size(), threads, buckets,
                            [&](int begin, int end, std::vector<InferredTriple>& out) {
                                for (int i = begin; i < end; ++i) {
                                    auto v = space.instance(i);
                                    for (int c = 0; c < kg.concepts.size(); ++c) {
                                        // cheap prefilter before the set probe
                                        double d = l2_dist(v, space.center(c));
                                        if (d > space.radius(c) - slack) continue;
                                        double score = d - space.radius(c);
                                        if (score > -slack) continue;
                                        if (kg.contains_instance_of({i, c})) continue;
                                        out.push_back({i, c, score});
                                    }
                                }
                            });
    std::vector<InferredTriple> out;
    for (auto& b : buckets) out.insert(out.end(), b.begin(), b.end());
    detail::sort_inferred(out);
    return out;
}

// All unknown concept pairs where s_i sits inside s_j with at least `slack`
// to spare (d + m_i - m_j <= -slack).
inline std::vector<InferredTriple> infer_sub_class_of(const EmbeddingSpace& space,
                                                      const KnowledgeGraph& kg, double slack = 0.0,
                                                      int threads = 1) {
    std::vector<std::vector<InferredTriple>> buckets;
    detail::parallel_chunks(kg.concepts.size(), threads, buckets,
                            [&](int begin, int end, std::vector<InferredTriple>& out) {
                                for (int i = begin; i < end; ++i) {
                                    auto ci = space.center(i);
                                    double mi = space.radius(i);
                                    for (int j = 0; j < kg.concepts.size(); ++j) {
                                        if (i == j) continue;
                                        double mj = space.radius(j);
                                        double d = l2_dist(ci, space.center(j));
                                        if (d > mj - slack) continue;  // prefilter on the center
                                        double score = d + mi - mj;
                                        if (score > -slack) continue;
                                        if (kg.contains_sub_class_of({i, j})) continue;
                                        out.push_back({i, j, score});
                                    }
                                }
                            });
    std::vector<InferredTriple> out;
    for (auto& b : buckets) out.insert(out.end(), b.begin(), b.end());
    detail::sort_inferred(out);
    return out;
}

inline void write_inferred_tsv(const std::vector<InferredTriple>& triples, const Vocab& sub_vocab,
                               const Vocab& sup_vocab, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    for (const auto& t : triples)
        out << sub_vocab.name(t.sub) << "\t" << sup_vocab.name(t.sup) << "\t" << t.score << "\n";
}

}  // namespace transc
