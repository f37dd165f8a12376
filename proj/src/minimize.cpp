#include <algorithm>
#include <numeric>

#include "partition.hpp"

namespace autorank::detail {

namespace {

struct Partition {
  std::vector<std::uint32_t> elems;     // states grouped by block
  std::vector<std::uint32_t> pos;       // index of a state in elems
  std::vector<std::uint32_t> block_of;  // block id per state
  std::vector<std::uint32_t> start;     // block range [start, end)
  std::vector<std::uint32_t> end;
  std::vector<std::uint32_t> marked;    // marked prefix length per block

  std::uint32_t size(std::uint32_t b) const { return end[b] - start[b]; }

  void mark(std::uint32_t q) {
    const std::uint32_t b = block_of[q];
    const std::uint32_t target = start[b] + marked[b];
    const std::uint32_t other = elems[target];
    std::swap(elems[pos[q]], elems[target]);
    pos[other] = pos[q];
    pos[q] = target;
    ++marked[b];
  }

  // Splits the marked prefix off block b; returns the new block id or b when
  // nothing changed.
  std::uint32_t split(std::uint32_t b) {
    const std::uint32_t m = marked[b];
    marked[b] = 0;
    if (m == 0 || m == size(b)) return b;
    const auto nb = static_cast<std::uint32_t>(start.size());
    start.push_back(start[b]);
    end.push_back(start[b] + m);
    marked.push_back(0);
    start[b] += m;
    for (std::uint32_t i = start[nb]; i < end[nb]; ++i) block_of[elems[i]] = nb;
    return nb;
  }
};

}  // namespace

std::vector<std::uint32_t> refine_partition(
    std::uint32_t n, std::uint32_t letters,
    const std::vector<std::uint32_t>& delta,
    const std::vector<std::uint32_t>& labels) {
  if (n == 0) return {};

  // Inverse transitions in CSR form, keyed by (letter, target).
  std::vector<std::uint32_t> offset(static_cast<std::size_t>(letters) * n + 1, 0);
  for (std::uint32_t q = 0; q < n; ++q) {
    for (std::uint32_t a = 0; a < letters; ++a) {
      ++offset[static_cast<std::size_t>(a) * n + delta[static_cast<std::size_t>(q) * letters + a] + 1];
    }
  }
  std::partial_sum(offset.begin(), offset.end(), offset.begin());
  std::vector<std::uint32_t> preds(static_cast<std::size_t>(n) * letters);
  {
    std::vector<std::uint32_t> fill(offset.begin(), offset.end() - 1);
    for (std::uint32_t q = 0; q < n; ++q) {
      for (std::uint32_t a = 0; a < letters; ++a) {
        const std::size_t key = static_cast<std::size_t>(a) * n +
                                delta[static_cast<std::size_t>(q) * letters + a];
        preds[fill[key]++] = q;
      }
    }
  }

  Partition p;
  p.elems.resize(n);
  std::iota(p.elems.begin(), p.elems.end(), 0u);
  std::stable_sort(p.elems.begin(), p.elems.end(),
                   [&](std::uint32_t x, std::uint32_t y) { return labels[x] < labels[y]; });
  p.pos.resize(n);
  p.block_of.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::uint32_t q = p.elems[i];
    p.pos[q] = i;
    if (i == 0 || labels[q] != labels[p.elems[i - 1]]) {
      if (i > 0) p.end.push_back(i);
      p.start.push_back(i);
      p.marked.push_back(0);
    }
    p.block_of[q] = static_cast<std::uint32_t>(p.start.size() - 1);
  }
  p.end.push_back(n);

  // Worklist of splitters (block, letter).
  std::vector<std::pair<std::uint32_t, std::uint32_t>> work;
  std::vector<char> in_work;
  auto ensure = [&](std::uint32_t blocks) {
    in_work.resize(static_cast<std::size_t>(blocks) * letters, 0);
  };
  auto push = [&](std::uint32_t b, std::uint32_t a) {
    auto& flag = in_work[static_cast<std::size_t>(b) * letters + a];
    if (!flag) {
      flag = 1;
      work.emplace_back(b, a);
    }
  };
  ensure(static_cast<std::uint32_t>(p.start.size()));
  // Seeding every initial block is correct for any number of labels.
  for (std::uint32_t b = 0; b < p.start.size(); ++b) {
    for (std::uint32_t a = 0; a < letters; ++a) push(b, a);
  }

  std::vector<std::uint32_t> touched;
  std::vector<std::uint32_t> splitter;
  while (!work.empty()) {
    const auto [sb, a] = work.back();
    work.pop_back();
    in_work[static_cast<std::size_t>(sb) * letters + a] = 0;

    splitter.assign(p.elems.begin() + p.start[sb], p.elems.begin() + p.end[sb]);
    touched.clear();
    for (std::uint32_t t : splitter) {
      const std::size_t key = static_cast<std::size_t>(a) * n + t;
      for (std::uint32_t i = offset[key]; i < offset[key + 1]; ++i) {
        const std::uint32_t q = preds[i];
        const std::uint32_t b = p.block_of[q];
        // Skip states already marked in this round.
        if (p.pos[q] < p.start[b] + p.marked[b]) continue;
        if (p.marked[b] == 0) touched.push_back(b);
        p.mark(q);
      }
    }
    for (std::uint32_t b : touched) {
      const std::uint32_t nb = p.split(b);
      if (nb == b) continue;
      ensure(static_cast<std::uint32_t>(p.start.size()));
      const std::uint32_t smaller = p.size(nb) <= p.size(b) ? nb : b;
      for (std::uint32_t c = 0; c < letters; ++c) {
        if (in_work[static_cast<std::size_t>(b) * letters + c]) {
          push(nb, c);
        } else {
          push(smaller, c);
        }
      }
    }
  }
  return p.block_of;
}

}  // namespace autorank::detail
