#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ctql/grid.hpp"

namespace ctql {

// Tabular Q(s,a); absent entries read 0. Rows are allocated lazily: the fine
// grid has 5e5 states x 220 actions and only a small fraction is ever visited.
class QTable {
public:
    QTable(std::uint32_t n_states, std::uint32_t n_actions, std::uint64_t grid_fingerprint);

    static QTable for_grid(const Grid& g) {
        return QTable(g.n_states(), g.n_actions(), g.fingerprint());
    }

    std::uint32_t n_states() const { return n_states_; }
    std::uint32_t n_actions() const { return n_actions_; }
    std::uint64_t grid_fingerprint() const { return fingerprint_; }

    double value(StateId s, ActionId a) const;
    void set(StateId s, ActionId a, double v);

    // Lowest-ActionId argmax of Q(s,.) and the attained maximum.
    std::pair<ActionId, double> greedy(StateId s) const;
    double max_value(StateId s) const;

    // Number of states with an allocated row (visited states).
    std::size_t visited_states() const { return rows_.size(); }
    std::size_t nonzero_entries() const;

    // Header (n_states, n_actions, grid fingerprint) then nonzero
    // (state, action, value) triples; binary, little-endian.
    void save(const std::string& path) const;
    static QTable load(const std::string& path);
    static QTable load(const std::string& path, const Grid& expected_grid);

    bool operator==(const QTable& o) const;

private:
    void check_indices(StateId s, ActionId a) const;

    std::uint32_t n_states_;
    std::uint32_t n_actions_;
    std::uint64_t fingerprint_;
    std::unordered_map<StateId, std::vector<double>> rows_;
};

}  // namespace ctql
