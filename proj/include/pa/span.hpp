#pragma once

#include <vector>

#include "subspace.hpp"
#include "words.hpp"

namespace pa {

struct SpanningSet {
    std::vector<Vec> vectors;
    std::vector<Word> tags;
    std::size_t sweeps = 0;  // sweeps that enlarged the span
};

enum class TagOrder { Prepend, Append };

// Closure of span{seed} under the maps step(op, .), op < ops. Each sweep applies
// every op, in index order, to the vectors added by the previous sweep.
// A vector obtained from one tagged w by op gets tag op.w (Prepend) or w.op (Append).
template <class Step>
SpanningSet grow_span(const Vec& seed, std::size_t ops, Step step, TagOrder order,
                      double tol_rank) {
    SpanningSet out;
    Subspace span(seed.size(), tol_rank);
    if (!span.try_add(seed)) return out;
    out.vectors.push_back(seed);
    out.tags.emplace_back();
    std::size_t begin = 0;
    for (;;) {
        const std::size_t end = out.vectors.size();
        for (std::size_t i = begin; i < end; ++i)
            for (Symbol op = 0; op < ops; ++op) {
                Vec v = step(op, out.vectors[i]);
                if (!span.try_add(v)) continue;
                Word tag = out.tags[i];
                if (order == TagOrder::Prepend)
                    tag.insert(tag.begin(), op);
                else
                    tag.push_back(op);
                out.vectors.push_back(std::move(v));
                out.tags.push_back(std::move(tag));
            }
        if (out.vectors.size() == end) break;
        ++out.sweeps;
        begin = end;
    }
    return out;
}

}  // namespace pa
