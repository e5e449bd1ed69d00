#include "ggc/candidate_tree.hpp"

#include <algorithm>
#include <cstring>
#include <memory_resource>
#include <new>

#if defined(__linux__)
#include <sys/mman.h>
#endif

namespace ggc {

namespace {

constexpr int kLeafCap = 16;   // keys per leaf
constexpr int kInnerCap = 16;  // children per inner node
constexpr int kLeafMin = kLeafCap / 2;
constexpr int kInnerMin = kInnerCap / 2;
constexpr int kMaxHeight = 24;  // fanout >= 8 makes this unreachable

#if defined(__linux__)
// Upstream for the node pool. Chunk requests of 2 MiB and up come from
// anonymous mmap, trimmed to 2 MiB alignment and flagged MADV_HUGEPAGE, so
// kernels with THP=madvise back the slabs with huge pages and descents stop
// paying a page walk per node once the tree outgrows the dTLB.
class HugeChunkResource final : public std::pmr::memory_resource {
    static constexpr std::size_t kHuge = std::size_t{2} << 20;

    void* do_allocate(std::size_t bytes, std::size_t align) override {
        if (bytes < kHuge || align > kHuge) {
            return std::pmr::new_delete_resource()->allocate(bytes, align);
        }
        const std::size_t len = (bytes + kHuge - 1) & ~(kHuge - 1);
        void* raw = ::mmap(nullptr, len + kHuge, PROT_READ | PROT_WRITE,
                           MAP_PRIVATE | MAP_ANONYMOUS, -1, 0);
        if (raw == MAP_FAILED) throw std::bad_alloc();
        const auto base = reinterpret_cast<std::uintptr_t>(raw);
        const std::uintptr_t head = (base + kHuge - 1) & ~std::uintptr_t(kHuge - 1);
        if (head > base) ::munmap(raw, head - base);
        const std::uintptr_t tail = base + len + kHuge;
        if (tail > head + len) ::munmap(reinterpret_cast<void*>(head + len), tail - (head + len));
        void* p = reinterpret_cast<void*>(head);
        ::madvise(p, len, MADV_HUGEPAGE);
        return p;
    }

    void do_deallocate(void* p, std::size_t bytes, std::size_t align) override {
        if (bytes < kHuge || align > kHuge) {
            std::pmr::new_delete_resource()->deallocate(p, bytes, align);
            return;
        }
        ::munmap(p, (bytes + kHuge - 1) & ~(kHuge - 1));
    }

    bool do_is_equal(const std::pmr::memory_resource& other) const noexcept override {
        return this == &other;
    }
};
#endif

}  // namespace

struct CandidateTree::Leaf {
    Leaf* next = nullptr;
    Leaf* prev = nullptr;
    std::int32_t count = 0;
    MergeCandidate keys[kLeafCap];
};

// count children; sep[t] partitions child[t] | child[t+1]. Separators are
// copies of the right subtree's minimum at split time; keys never recur, so
// "left < sep <= right" holds for the node's whole lifetime even after the
// key a separator was copied from is erased.
struct CandidateTree::Inner {
    std::int32_t count = 0;
    MergeCandidate sep[kInnerCap - 1];
    void* child[kInnerCap];
};

// Pool options ask for up to 2^18 blocks per chunk so steady-state slabs are
// multi-megabyte (hugepage-eligible) instead of a scatter of small chunks.
// 512 covers both node types, so every node is pooled. Destruction releases
// the chunks wholesale; nodes are trivially destructible and never walked.
struct CandidateTree::Arena {
#if defined(__linux__)
    HugeChunkResource upstream;
    std::pmr::unsynchronized_pool_resource pool{
        std::pmr::pool_options{std::size_t{1} << 18, 512}, &upstream};
#else
    std::pmr::unsynchronized_pool_resource pool{std::pmr::pool_options{std::size_t{1} << 18, 512}};
#endif
};

CandidateTree::CandidateTree() : arena_(std::make_unique<Arena>()) {
    static_assert(std::is_trivially_destructible_v<Leaf>);
    static_assert(std::is_trivially_destructible_v<Inner>);
}

CandidateTree::~CandidateTree() = default;

CandidateTree::CandidateTree(CandidateTree&& other) noexcept
    : arena_(std::move(other.arena_)),
      root_(other.root_),
      head_(other.head_),
      tail_(other.tail_),
      size_(other.size_),
      height_(other.height_) {
    other.root_ = nullptr;
    other.head_ = nullptr;
    other.tail_ = nullptr;
    other.size_ = 0;
    other.height_ = 0;
}

CandidateTree::Leaf* CandidateTree::new_leaf() {
    return new (arena_->pool.allocate(sizeof(Leaf), alignof(Leaf))) Leaf;
}

CandidateTree::Inner* CandidateTree::new_inner() {
    return new (arena_->pool.allocate(sizeof(Inner), alignof(Inner))) Inner;
}

void CandidateTree::free_leaf(Leaf* l) { arena_->pool.deallocate(l, sizeof(Leaf), alignof(Leaf)); }

void CandidateTree::free_inner(Inner* n) {
    arena_->pool.deallocate(n, sizeof(Inner), alignof(Inner));
}

namespace {

// First t with c < sep[t], else the last child slot.
int child_index(const MergeCandidate* sep, std::int32_t children, const MergeCandidate& c) {
    return static_cast<int>(std::upper_bound(sep, sep + (children - 1), c) - sep);
}

int key_pos(const MergeCandidate* keys, std::int32_t count, const MergeCandidate& c) {
    return static_cast<int>(std::lower_bound(keys, keys + count, c) - keys);
}

}  // namespace

CandidateTree::Leaf* CandidateTree::descend(const MergeCandidate& c) const {
    void* cur = root_;
    for (std::int32_t lev = height_; lev > 0; --lev) {
        auto* in = static_cast<Inner*>(cur);
        cur = in->child[child_index(in->sep, in->count, c)];
    }
    return static_cast<Leaf*>(cur);
}

void CandidateTree::insert(const MergeCandidate& c) {
    if (root_ == nullptr) {
        Leaf* lf = new_leaf();
        lf->keys[0] = c;
        lf->count = 1;
        root_ = lf;
        head_ = tail_ = lf;
        size_ = 1;
        return;
    }
    Inner* pnode[kMaxHeight];
    int pidx[kMaxHeight];
    int depth = 0;
    void* cur = root_;
    for (std::int32_t lev = height_; lev > 0; --lev) {
        auto* in = static_cast<Inner*>(cur);
        const int idx = child_index(in->sep, in->count, c);
        pnode[depth] = in;
        pidx[depth] = idx;
        ++depth;
        cur = in->child[idx];
    }
    auto* lf = static_cast<Leaf*>(cur);
    const int pos = key_pos(lf->keys, lf->count, c);
    ++size_;
    if (lf->count < kLeafCap) {
        std::memmove(lf->keys + pos + 1, lf->keys + pos,
                     sizeof(MergeCandidate) * static_cast<std::size_t>(lf->count - pos));
        lf->keys[pos] = c;
        ++lf->count;
        return;
    }

    // Full leaf: split the merged 17-key run 9/8 and push the right half's
    // minimum up as the new separator.
    MergeCandidate tmp[kLeafCap + 1];
    std::memcpy(tmp, lf->keys, sizeof(MergeCandidate) * static_cast<std::size_t>(pos));
    tmp[pos] = c;
    std::memcpy(tmp + pos + 1, lf->keys + pos,
                sizeof(MergeCandidate) * static_cast<std::size_t>(kLeafCap - pos));
    constexpr int kLeft = (kLeafCap + 2) / 2;
    Leaf* rt = new_leaf();
    std::memcpy(lf->keys, tmp, sizeof(MergeCandidate) * kLeft);
    lf->count = kLeft;
    rt->count = kLeafCap + 1 - kLeft;
    std::memcpy(rt->keys, tmp + kLeft, sizeof(MergeCandidate) * static_cast<std::size_t>(rt->count));
    rt->next = lf->next;
    rt->prev = lf;
    if (lf->next != nullptr) {
        lf->next->prev = rt;
    } else {
        tail_ = rt;
    }
    lf->next = rt;

    MergeCandidate up = rt->keys[0];
    void* link = rt;
    for (int t = depth - 1; t >= 0; --t) {
        Inner* in = pnode[t];
        const int idx = pidx[t];
        if (in->count < kInnerCap) {
            std::memmove(in->sep + idx + 1, in->sep + idx,
                         sizeof(MergeCandidate) * static_cast<std::size_t>(in->count - 1 - idx));
            std::memmove(in->child + idx + 2, in->child + idx + 1,
                         sizeof(void*) * static_cast<std::size_t>(in->count - 1 - idx));
            in->sep[idx] = up;
            in->child[idx + 1] = link;
            ++in->count;
            return;
        }
        // Full inner node: 17 children and 16 separators split 9/8 around the
        // promoted middle separator.
        MergeCandidate ts[kInnerCap];
        void* tc[kInnerCap + 1];
        std::memcpy(ts, in->sep, sizeof(MergeCandidate) * static_cast<std::size_t>(idx));
        ts[idx] = up;
        std::memcpy(ts + idx + 1, in->sep + idx,
                    sizeof(MergeCandidate) * static_cast<std::size_t>(kInnerCap - 1 - idx));
        std::memcpy(tc, in->child, sizeof(void*) * static_cast<std::size_t>(idx + 1));
        tc[idx + 1] = link;
        std::memcpy(tc + idx + 2, in->child + idx + 1,
                    sizeof(void*) * static_cast<std::size_t>(kInnerCap - 1 - idx));
        constexpr int kLeftCh = (kInnerCap + 2) / 2;
        Inner* ri = new_inner();
        std::memcpy(in->sep, ts, sizeof(MergeCandidate) * (kLeftCh - 1));
        std::memcpy(in->child, tc, sizeof(void*) * kLeftCh);
        in->count = kLeftCh;
        ri->count = kInnerCap + 1 - kLeftCh;
        std::memcpy(ri->sep, ts + kLeftCh, sizeof(MergeCandidate) * static_cast<std::size_t>(ri->count - 1));
        std::memcpy(ri->child, tc + kLeftCh, sizeof(void*) * static_cast<std::size_t>(ri->count));
        up = ts[kLeftCh - 1];
        link = ri;
    }
    Inner* nr = new_inner();
    nr->count = 2;
    nr->sep[0] = up;
    nr->child[0] = root_;
    nr->child[1] = link;
    root_ = nr;
    ++height_;
}

bool CandidateTree::erase(const MergeCandidate& c) {
    if (root_ == nullptr) return false;
    Inner* pnode[kMaxHeight];
    int pidx[kMaxHeight];
    int depth = 0;
    void* cur = root_;
    for (std::int32_t lev = height_; lev > 0; --lev) {
        auto* in = static_cast<Inner*>(cur);
        const int idx = child_index(in->sep, in->count, c);
        pnode[depth] = in;
        pidx[depth] = idx;
        ++depth;
        cur = in->child[idx];
    }
    auto* lf = static_cast<Leaf*>(cur);
    const int pos = key_pos(lf->keys, lf->count, c);
    if (pos == lf->count || !(lf->keys[pos] == c)) return false;
    std::memmove(lf->keys + pos, lf->keys + pos + 1,
                 sizeof(MergeCandidate) * static_cast<std::size_t>(lf->count - pos - 1));
    --lf->count;
    --size_;
    if (depth == 0) {
        if (lf->count == 0) {
            free_leaf(lf);
            root_ = nullptr;
            head_ = tail_ = nullptr;
        }
        return true;
    }
    if (lf->count >= kLeafMin) return true;

    // Leaf underflow: borrow from a same-parent sibling, else merge into one.
    Inner* par = pnode[depth - 1];
    const int idx = pidx[depth - 1];
    Leaf* ls = idx > 0 ? static_cast<Leaf*>(par->child[idx - 1]) : nullptr;
    Leaf* rs = idx < par->count - 1 ? static_cast<Leaf*>(par->child[idx + 1]) : nullptr;
    if (ls != nullptr && ls->count > kLeafMin) {
        std::memmove(lf->keys + 1, lf->keys, sizeof(MergeCandidate) * static_cast<std::size_t>(lf->count));
        lf->keys[0] = ls->keys[ls->count - 1];
        --ls->count;
        ++lf->count;
        par->sep[idx - 1] = lf->keys[0];
        return true;
    }
    if (rs != nullptr && rs->count > kLeafMin) {
        lf->keys[lf->count] = rs->keys[0];
        ++lf->count;
        std::memmove(rs->keys, rs->keys + 1, sizeof(MergeCandidate) * static_cast<std::size_t>(rs->count - 1));
        --rs->count;
        par->sep[idx] = rs->keys[0];
        return true;
    }
    Leaf* a;
    Leaf* b;
    int s;  // parent separator between a and b
    if (ls != nullptr) {
        a = ls;
        b = lf;
        s = idx - 1;
    } else {
        a = lf;
        b = rs;
        s = idx;
    }
    std::memcpy(a->keys + a->count, b->keys, sizeof(MergeCandidate) * static_cast<std::size_t>(b->count));
    a->count += b->count;
    a->next = b->next;
    if (b->next != nullptr) {
        b->next->prev = a;
    } else {
        tail_ = a;
    }
    free_leaf(b);
    std::memmove(par->sep + s, par->sep + s + 1,
                 sizeof(MergeCandidate) * static_cast<std::size_t>(par->count - 2 - s));
    std::memmove(par->child + s + 1, par->child + s + 2,
                 sizeof(void*) * static_cast<std::size_t>(par->count - 2 - s));
    --par->count;

    int t = depth - 1;
    Inner* node = par;
    while (t > 0 && node->count < kInnerMin) {
        Inner* pin = pnode[t - 1];
        const int pat = pidx[t - 1];
        Inner* li = pat > 0 ? static_cast<Inner*>(pin->child[pat - 1]) : nullptr;
        Inner* ri = pat < pin->count - 1 ? static_cast<Inner*>(pin->child[pat + 1]) : nullptr;
        if (li != nullptr && li->count > kInnerMin) {
            // Rotate right through the parent separator.
            std::memmove(node->sep + 1, node->sep,
                         sizeof(MergeCandidate) * static_cast<std::size_t>(node->count - 1));
            std::memmove(node->child + 1, node->child, sizeof(void*) * static_cast<std::size_t>(node->count));
            node->sep[0] = pin->sep[pat - 1];
            node->child[0] = li->child[li->count - 1];
            pin->sep[pat - 1] = li->sep[li->count - 2];
            --li->count;
            ++node->count;
            return true;
        }
        if (ri != nullptr && ri->count > kInnerMin) {
            node->sep[node->count - 1] = pin->sep[pat];
            node->child[node->count] = ri->child[0];
            ++node->count;
            pin->sep[pat] = ri->sep[0];
            std::memmove(ri->sep, ri->sep + 1, sizeof(MergeCandidate) * static_cast<std::size_t>(ri->count - 2));
            std::memmove(ri->child, ri->child + 1, sizeof(void*) * static_cast<std::size_t>(ri->count - 1));
            --ri->count;
            return true;
        }
        Inner* ia;
        Inner* ib;
        int ps;
        if (li != nullptr) {
            ia = li;
            ib = node;
            ps = pat - 1;
        } else {
            ia = node;
            ib = ri;
            ps = pat;
        }
        ia->sep[ia->count - 1] = pin->sep[ps];
        std::memcpy(ia->sep + ia->count, ib->sep,
                    sizeof(MergeCandidate) * static_cast<std::size_t>(ib->count - 1));
        std::memcpy(ia->child + ia->count, ib->child, sizeof(void*) * static_cast<std::size_t>(ib->count));
        ia->count += ib->count;
        free_inner(ib);
        std::memmove(pin->sep + ps, pin->sep + ps + 1,
                     sizeof(MergeCandidate) * static_cast<std::size_t>(pin->count - 2 - ps));
        std::memmove(pin->child + ps + 1, pin->child + ps + 2,
                     sizeof(void*) * static_cast<std::size_t>(pin->count - 2 - ps));
        --pin->count;
        node = pin;
        --t;
    }
    if (height_ > 0) {
        auto* rin = static_cast<Inner*>(root_);
        if (rin->count == 1) {
            root_ = rin->child[0];
            free_inner(rin);
            --height_;
        }
    }
    return true;
}

const MergeCandidate& CandidateTree::min() const { return head_->keys[0]; }

const MergeCandidate& CandidateTree::max() const { return tail_->keys[tail_->count - 1]; }

CandidateTree::const_iterator CandidateTree::begin() const {
    const_iterator it;
    it.leaf_ = head_;
    return it;
}

CandidateTree::const_iterator CandidateTree::lower_bound(const MergeCandidate& c) const {
    if (root_ == nullptr) return {};
    const Leaf* lf = descend(c);
    const int pos = key_pos(lf->keys, lf->count, c);
    const_iterator it;
    if (pos == lf->count) {
        it.leaf_ = lf->next;  // descent bounds c below the next leaf's minimum
    } else {
        it.leaf_ = lf;
        it.slot_ = pos;
    }
    return it;
}

const MergeCandidate& CandidateTree::const_iterator::operator*() const {
    return static_cast<const CandidateTree::Leaf*>(leaf_)->keys[slot_];
}

CandidateTree::const_iterator& CandidateTree::const_iterator::operator++() {
    const auto* lf = static_cast<const CandidateTree::Leaf*>(leaf_);
    if (++slot_ >= lf->count) {
        leaf_ = lf->next;
        slot_ = 0;
    }
    return *this;
}

}  // namespace ggc
