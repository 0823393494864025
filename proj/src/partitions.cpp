#include "rankcrank/partitions.hpp"

#include <algorithm>
#include <cstdlib>

namespace rankcrank {

const char* stat_name(Stat s) { return s == Stat::rank ? "rank" : "crank"; }

void for_each_partition(int n, const std::function<void(const std::vector<int>&)>& visit) {
    if (n < 0) return;
    if (n == 0) {
        visit({});
        return;
    }
    std::vector<int> p{n};
    for (;;) {
        visit(p);
        int k = static_cast<int>(p.size()) - 1;
        while (k >= 0 && p[k] == 1) --k;
        if (k < 0) break;
        int r = static_cast<int>(p.size()) - k;  // removed ones plus the decrement
        p.resize(k + 1);
        p[k] -= 1;
        while (r > p[k]) {
            p.push_back(p[k]);
            r -= p[k];
        }
        if (r > 0) p.push_back(r);
    }
}

int rank_of(const std::vector<int>& parts) {
    if (parts.empty()) throw empty_partition();
    return parts.front() - static_cast<int>(parts.size());
}

int crank_of(const std::vector<int>& parts) {
    if (parts.empty()) throw empty_partition();
    int ones = 0;
    for (auto it = parts.rbegin(); it != parts.rend() && *it == 1; ++it) ++ones;
    if (ones == 0) return parts.front();
    int larger = 0;
    for (int x : parts) {
        if (x > ones) ++larger;
        else break;
    }
    return larger - ones;
}

static StatTable enumerate_table(Stat kind, int n) {
    StatTable t;
    t.kind = kind;
    t.n = n;
    if (n == 0) {
        t.counts[0] = 1;
        return t;
    }
    for_each_partition(n, [&](const std::vector<int>& p) {
        int s = kind == Stat::rank ? rank_of(p) : crank_of(p);
        ++t.counts[s];
    });
    return t;
}

StatTable rank_table(int n) { return enumerate_table(Stat::rank, n); }

StatTable crank_table(int n) {
    if (n == 1) {
        StatTable t;
        t.kind = Stat::crank;
        t.n = 1;
        t.counts[1] = 1;
        t.counts[0] = -1;
        t.counts[-1] = 1;
        return t;
    }
    return enumerate_table(Stat::crank, n);
}

// Both fixed-m generating functions have the shape
//   P(q) * sum_{j>=1} (-1)^{j-1} (q^{e(j)} - q^{e(j)+j}),
// differing only in the exponent e(j); the rank one additionally needs the
// constant 1 when m = 0 for the empty partition.
static QSeries count_series(int m, int order, bool rank_kind) {
    long mm = std::labs(static_cast<long>(m));
    QSeries P = partition_series(order);
    std::vector<Q> v(static_cast<size_t>(order) + 1);
    auto add_term = [&](long e, int sign) {
        if (e > order) return;
        for (long i = e; i <= order; ++i) {
            if (sign > 0)
                v[static_cast<size_t>(i)] += P.coeff(static_cast<int>(i - e));
            else
                v[static_cast<size_t>(i)] -= P.coeff(static_cast<int>(i - e));
        }
    };
    for (long j = 1;; ++j) {
        long e = rank_kind ? j * (3 * j - 1) / 2 + mm * j : j * (j - 1) / 2 + mm * j;
        if (e > order) break;
        int s = (j % 2 == 1) ? 1 : -1;
        add_term(e, s);
        add_term(e + j, -s);
    }
    if (rank_kind && m == 0) v[0] += 1;
    return QSeries(order, std::move(v));
}

QSeries rank_count_series(int m, int order) { return count_series(m, order, true); }

QSeries crank_count_series(int m, int order) { return count_series(m, order, false); }

std::vector<StatTable> stat_tables_to(Stat kind, int order) {
    std::vector<StatTable> tables(static_cast<size_t>(order) + 1);
    for (int n = 0; n <= order; ++n) {
        tables[n].kind = kind;
        tables[n].n = n;
    }
    for (int m = 0; m <= order; ++m) {
        QSeries s = kind == Stat::rank ? rank_count_series(m, order)
                                       : crank_count_series(m, order);
        for (int n = 0; n <= order; ++n) {
            const Q& c = s.coeff(n);
            if (c == 0) continue;
            Z z = c.get_num();
            tables[n].counts[m] += z;
            if (m != 0) tables[n].counts[-m] += z;
        }
    }
    for (auto& t : tables) {
        for (auto it = t.counts.begin(); it != t.counts.end();) {
            if (it->second == 0) it = t.counts.erase(it);
            else ++it;
        }
    }
    return tables;
}

Z residue_count(Stat kind, int k, int t, int n) {
    StatTable tab = kind == Stat::rank ? rank_table(n) : crank_table(n);
    Z total(0);
    for (const auto& [m, c] : tab.counts) {
        int r = ((m % t) + t) % t;
        if (r == ((k % t) + t) % t) total += c;
    }
    return total;
}

std::vector<std::vector<Z>> residue_class_counts(Stat kind, int t, int order) {
    std::vector<std::vector<Z>> out(static_cast<size_t>(order) + 1,
                                    std::vector<Z>(static_cast<size_t>(t)));
    for (int m = 0; m <= order; ++m) {
        QSeries s = kind == Stat::rank ? rank_count_series(m, order)
                                       : crank_count_series(m, order);
        int rp = m % t;
        int rn = ((-m) % t + t) % t;
        for (int n = 0; n <= order; ++n) {
            const Q& c = s.coeff(n);
            if (c == 0) continue;
            Z z = c.get_num();
            out[n][rp] += z;
            if (m != 0) out[n][rn] += z;
        }
    }
    return out;
}

nlohmann::ordered_json stat_table_to_json(const StatTable& t) {
    nlohmann::ordered_json j;
    j["kind"] = stat_name(t.kind);
    j["n"] = t.n;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [m, c] : t.counts) arr.push_back({m, c.get_str()});
    j["counts"] = arr;
    return j;
}

} // namespace rankcrank
