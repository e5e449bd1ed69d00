#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>

#include "ggc/graph.hpp"

namespace ggc {

struct MergeCandidate {
    double delta = 0.0;
    VertexId i = -1;  // canonical i < j
    VertexId j = -1;

    friend bool operator<(const MergeCandidate& a, const MergeCandidate& b) {
        if (a.delta != b.delta) return a.delta < b.delta;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    }
    friend bool operator==(const MergeCandidate& a, const MergeCandidate& b) {
        return a.delta == b.delta && a.i == b.i && a.j == b.j;
    }
};

// Ordered set of merge candidates backed by a B+-tree of order 16. Insert,
// exact-key erase, lower_bound, and extremum lookup are all logarithmic,
// same as a red-black tree — but a lookup descends ~5 wide nodes instead of
// ~19 pointer hops, and the upper levels stay cache-resident. That is what
// keeps the per-operation cost flat once the candidate set outgrows L2: with
// a binary tree the extra depth per doubling is a guaranteed cache miss.
//
// Keys are unique, and a (i, j) pair is never re-inserted after erasure
// (merged clusters get fresh ids), so separator copies inside the tree can
// never collide with a later insert. Nodes come from a private arena of
// hugepage-backed slabs (see candidate_tree.cpp). The arena sits behind a
// unique_ptr so node addresses survive moves; move assignment would tear the
// arena down under live nodes, so it stays deleted.
class CandidateTree {
public:
    CandidateTree();
    ~CandidateTree();
    CandidateTree(CandidateTree&& other) noexcept;
    CandidateTree& operator=(CandidateTree&&) = delete;

    // Precondition: c is not present (pairs are unique for the tree's lifetime).
    void insert(const MergeCandidate& c);

    // Erase the exact stored key. Returns false if absent.
    bool erase(const MergeCandidate& c);

    // Extrema; undefined on an empty tree (callers guard).
    const MergeCandidate& min() const;
    const MergeCandidate& max() const;

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }

    class const_iterator {
    public:
        const_iterator() = default;
        const MergeCandidate& operator*() const;
        const_iterator& operator++();
        friend bool operator==(const const_iterator&, const const_iterator&) = default;

    private:
        friend class CandidateTree;
        const void* leaf_ = nullptr;
        std::int32_t slot_ = 0;
    };

    const_iterator begin() const;
    const_iterator end() const noexcept { return {}; }

    // First key not less than c (c itself need not be present).
    const_iterator lower_bound(const MergeCandidate& c) const;

private:
    struct Leaf;
    struct Inner;
    struct Arena;

    Leaf* new_leaf();
    Inner* new_inner();
    void free_leaf(Leaf* l);
    void free_inner(Inner* n);
    Leaf* descend(const MergeCandidate& c) const;

    std::unique_ptr<Arena> arena_;
    void* root_ = nullptr;  // Leaf when height_ == 0, else Inner
    Leaf* head_ = nullptr;
    Leaf* tail_ = nullptr;
    std::size_t size_ = 0;
    std::int32_t height_ = 0;  // inner levels above the leaves
};

}  // namespace ggc
