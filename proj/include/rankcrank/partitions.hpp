#ifndef RANKCRANK_PARTITIONS_HPP
#define RANKCRANK_PARTITIONS_HPP

#include "rankcrank/qseries.hpp"
#include "rankcrank/types.hpp"

#include <json.hpp>

#include <functional>
#include <map>
#include <vector>

namespace rankcrank {

enum class Stat { rank, crank };

const char* stat_name(Stat s);

// Visits every partition of n exactly once, parts in descending order,
// partitions in reverse lexicographic order.  The callback argument is only
// valid for the duration of the call.  n = 0 visits the empty partition.
void for_each_partition(int n, const std::function<void(const std::vector<int>&)>& visit);

// rank = largest part - number of parts.  Throws empty_partition on {}.
int rank_of(const std::vector<int>& parts);

// crank = largest part if there are no ones, otherwise (number of parts
// larger than the number of ones) - (number of ones).  Throws empty_partition.
int crank_of(const std::vector<int>& parts);

// Counts of partitions of n by statistic value.  Entries with count 0 are
// not stored (except where an amendment forces a signed entry).
struct StatTable {
    Stat kind = Stat::rank;
    int n = 0;
    std::map<int, Z> counts;

    Z count(int m) const {
        auto it = counts.find(m);
        return it == counts.end() ? Z(0) : it->second;
    }
};

// Enumerated tables.  rank_table(0) = crank_table(0) = {0: 1}.  crank_table(1)
// is the amended table {1: 1, 0: -1, -1: 1} rather than the raw enumeration.
StatTable rank_table(int n);
StatTable crank_table(int n);

// sum_n N(m, n) q^n and sum_n M(m, n) q^n for fixed m (m may be negative;
// both statistics are symmetric in m).  The crank series carries the amended
// n = 1 values automatically.
QSeries rank_count_series(int m, int order);
QSeries crank_count_series(int m, int order);

// Tables for all n <= order assembled from the fixed-m series.
std::vector<StatTable> stat_tables_to(Stat kind, int order);

// Number of partitions of n whose statistic is congruent to k mod t,
// computed from the enumerated (amended) table.
Z residue_count(Stat kind, int k, int t, int n);

// result[n][k] = number of partitions of n with statistic congruent to k
// mod t, for all n <= order, assembled from the fixed-m series.  Usable far
// beyond the range where per-n enumeration is feasible.
std::vector<std::vector<Z>> residue_class_counts(Stat kind, int t, int order);

nlohmann::ordered_json stat_table_to_json(const StatTable& t);

} // namespace rankcrank

#endif
