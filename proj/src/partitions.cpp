// Copyright 2026 The freewitt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "freewitt/partitions.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <string>

namespace freewitt {

class PartitionBuilder
{
public:
    explicit PartitionBuilder(int n) { m_p.m_size = static_cast<std::uint8_t>(n); }

    void assign(int i, int label)
    {
        m_p.m_label[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(label);
    }
    void set_blocks(int blocks) { m_p.m_blocks = static_cast<std::uint8_t>(blocks); }
    const Partition& get() const { return m_p; }

private:
    Partition m_p;
};

Partition::Partition(const std::vector<int>& labels)
{
    if (labels.size() > static_cast<std::size_t>(max_size)) {
        throw std::invalid_argument("partition: ground set larger than " + std::to_string(max_size));
    }
    int next = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] < 0 || labels[i] > next) {
            throw std::invalid_argument("partition: labels are not a restricted-growth string");
        }
        if (labels[i] == next) {
            ++next;
        }
        m_label[i] = static_cast<std::uint8_t>(labels[i]);
    }
    m_size = static_cast<std::uint8_t>(labels.size());
    m_blocks = static_cast<std::uint8_t>(next);
}

std::vector<int> Partition::block_sizes() const
{
    std::vector<int> sizes(m_blocks, 0);
    for (int i = 0; i < m_size; ++i) {
        ++sizes[m_label[static_cast<std::size_t>(i)]];
    }
    return sizes;
}

std::vector<std::vector<int>> Partition::blocks() const
{
    std::vector<std::vector<int>> out(m_blocks);
    for (int i = 0; i < m_size; ++i) {
        out[m_label[static_cast<std::size_t>(i)]].push_back(i + 1);
    }
    return out;
}

bool Partition::is_noncrossing() const
{
    // Scan left to right keeping a stack of blocks whose span is still open;
    // a revisited block must be on top, otherwise some block interleaves it.
    std::array<int, max_size> last{};
    for (int i = 0; i < m_size; ++i) {
        last[m_label[static_cast<std::size_t>(i)]] = i;
    }
    std::array<bool, max_size> opened{};
    std::vector<int> stack;
    for (int i = 0; i < m_size; ++i) {
        int b = m_label[static_cast<std::size_t>(i)];
        if (!opened[static_cast<std::size_t>(b)]) {
            opened[static_cast<std::size_t>(b)] = true;
            stack.push_back(b);
        } else if (stack.back() != b) {
            return false;
        }
        if (last[static_cast<std::size_t>(b)] == i) {
            stack.pop_back();
        }
    }
    return true;
}

namespace {

void check_size(int n)
{
    if (n < 1 || n > Partition::max_size) {
        throw std::invalid_argument("partition size out of range: " + std::to_string(n));
    }
}

void set_partition_rec(PartitionBuilder& b, int i, int n, int blocks,
                       const std::function<void(const Partition&)>& visit)
{
    if (i == n) {
        b.set_blocks(blocks);
        visit(b.get());
        return;
    }
    for (int label = 0; label <= blocks; ++label) {
        b.assign(i, label);
        set_partition_rec(b, i + 1, n, label == blocks ? blocks + 1 : blocks, visit);
    }
}

// open: blocks that may still receive elements, innermost last. Joining a
// block closes every block opened after it.
void nc_partition_rec(PartitionBuilder& b, int i, int n, int blocks, std::vector<int>& open,
                      const std::function<void(const Partition&)>& visit)
{
    if (i == n) {
        b.set_blocks(blocks);
        visit(b.get());
        return;
    }
    for (std::size_t depth = 0; depth < open.size(); ++depth) {
        std::vector<int> next(open.begin(), open.begin() + static_cast<std::ptrdiff_t>(depth) + 1);
        b.assign(i, open[depth]);
        nc_partition_rec(b, i + 1, n, blocks, next, visit);
    }
    open.push_back(blocks);
    b.assign(i, blocks);
    nc_partition_rec(b, i + 1, n, blocks + 1, open, visit);
    open.pop_back();
}

} // namespace

void for_each_set_partition(int n, const std::function<void(const Partition&)>& visit)
{
    check_size(n);
    PartitionBuilder b(n);
    set_partition_rec(b, 0, n, 0, visit);
}

void for_each_nc_partition(int n, const std::function<void(const Partition&)>& visit)
{
    check_size(n);
    PartitionBuilder b(n);
    std::vector<int> open;
    nc_partition_rec(b, 0, n, 0, open, visit);
}

namespace detail {

void check_enumeration_bound(std::size_t n, int bound, const char* what)
{
    if (n > static_cast<std::size_t>(bound)) {
        throw std::invalid_argument(std::string(what) + ": order " + std::to_string(n) + " exceeds "
                                    + std::to_string(bound));
    }
}

const std::vector<BlockTally>& block_tallies(int n, Lattice lattice)
{
    static std::mutex lock;
    static std::map<std::pair<int, Lattice>, std::vector<BlockTally>> cache;
    std::lock_guard guard(lock);
    auto it = cache.find({n, lattice});
    if (it != cache.end()) {
        return it->second;
    }
    std::map<std::vector<int>, BlockTally> by_type;
    auto visit = [&](const Partition& p) {
        std::vector<int> sizes = p.block_sizes();
        std::sort(sizes.begin(), sizes.end());
        std::int64_t mu = 1;
        if (lattice == Lattice::noncrossing) {
            for (int b : kreweras_block_sizes(p)) {
                const auto c = static_cast<std::int64_t>(catalan_number(b - 1));
                mu *= (b % 2 == 1) ? c : -c;
            }
        } else {
            const int k = p.block_count();
            for (int i = 2; i < k; ++i) {
                mu *= i;
            }
            mu = (k % 2 == 1) ? mu : -mu;
        }
        BlockTally& t = by_type[sizes];
        t.sizes = sizes;
        t.count += 1;
        t.mobius += mu;
    };
    if (lattice == Lattice::noncrossing) {
        for_each_nc_partition(n, visit);
    } else {
        for_each_set_partition(n, visit);
    }
    std::vector<BlockTally> out;
    for (auto& [sizes, t] : by_type) {
        out.push_back(std::move(t));
    }
    return cache.emplace(std::pair{n, lattice}, std::move(out)).first->second;
}
} // namespace detail

std::vector<Partition> set_partitions(int n)
{
    if (n < 1 || n > max_set_enumeration) {
        throw std::invalid_argument("set_partitions: n must be in 1.." + std::to_string(max_set_enumeration));
    }
    std::vector<Partition> out;
    out.reserve(bell_number(n));
    for_each_set_partition(n, [&](const Partition& p) { out.push_back(p); });
    return out;
}

std::vector<Partition> nc_partitions(int n)
{
    if (n < 1 || n > max_nc_enumeration) {
        throw std::invalid_argument("nc_partitions: n must be in 1.." + std::to_string(max_nc_enumeration));
    }
    std::vector<Partition> out;
    out.reserve(catalan_number(n));
    for_each_nc_partition(n, [&](const Partition& p) { out.push_back(p); });
    return out;
}

std::vector<int> kreweras_block_sizes(const Partition& p)
{
    const int n = p.size();
    std::vector<int> prev(static_cast<std::size_t>(n)); // pi^{-1}
    for (const auto& b : p.blocks()) {
        for (std::size_t i = 0; i < b.size(); ++i) {
            const int succ = b[(i + 1) % b.size()] - 1;
            prev[static_cast<std::size_t>(succ)] = b[i] - 1;
        }
    }
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::vector<int> sizes;
    for (int start = 0; start < n; ++start) {
        int len = 0;
        for (int i = start; !seen[static_cast<std::size_t>(i)]; i = prev[static_cast<std::size_t>((i + 1) % n)]) {
            seen[static_cast<std::size_t>(i)] = true;
            ++len;
        }
        if (len > 0) {
            sizes.push_back(len);
        }
    }
    return sizes;
}

std::uint64_t catalan_number(int n)
{
    if (n < 0 || n > 25) {
        throw std::invalid_argument("catalan_number: n out of range");
    }
    // C_{k+1} = C_k * 2(2k+1)/(k+2), exact at every step.
    std::uint64_t c = 1;
    for (int k = 0; k < n; ++k) {
        c = c * 2 * static_cast<std::uint64_t>(2 * k + 1) / static_cast<std::uint64_t>(k + 2);
    }
    return c;
}

std::uint64_t bell_number(int n)
{
    if (n < 0 || n > 25) {
        throw std::invalid_argument("bell_number: n out of range");
    }
    // Bell triangle.
    std::vector<std::uint64_t> row{1};
    for (int i = 0; i < n; ++i) {
        std::vector<std::uint64_t> next{row.back()};
        for (auto x : row) {
            next.push_back(next.back() + x);
        }
        row = std::move(next);
    }
    return row.front();
}

} // namespace freewitt
