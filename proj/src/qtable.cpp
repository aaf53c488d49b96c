#include "ctql/qtable.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace ctql {

namespace {

constexpr char kMagic[8] = {'C', 'T', 'Q', 'L', 'Q', 'T', '1', '\0'};

template <typename T>
void write_pod(std::ostream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

template <typename T>
T read_pod(std::istream& is) {
    T v;
    is.read(reinterpret_cast<char*>(&v), sizeof(v));
    if (!is) throw std::runtime_error("q-table file truncated");
    return v;
}

}  // namespace

QTable::QTable(std::uint32_t n_states, std::uint32_t n_actions, std::uint64_t grid_fingerprint)
    : n_states_(n_states), n_actions_(n_actions), fingerprint_(grid_fingerprint) {
    if (n_states == 0 || n_actions == 0)
        throw std::invalid_argument("q-table dimensions must be positive");
}

void QTable::check_indices(StateId s, ActionId a) const {
    if (s >= n_states_ || a >= n_actions_)
        throw std::out_of_range("q-table index out of range");
}

double QTable::value(StateId s, ActionId a) const {
    check_indices(s, a);
    auto it = rows_.find(s);
    return it == rows_.end() ? 0.0 : it->second[a];
}

void QTable::set(StateId s, ActionId a, double v) {
    check_indices(s, a);
    auto it = rows_.find(s);
    if (it == rows_.end()) {
        if (v == 0.0) return;
        it = rows_.emplace(s, std::vector<double>(n_actions_, 0.0)).first;
    }
    it->second[a] = v;
}

std::pair<ActionId, double> QTable::greedy(StateId s) const {
    check_indices(s, 0);
    auto it = rows_.find(s);
    if (it == rows_.end()) return {0, 0.0};
    const auto& row = it->second;
    ActionId best = 0;
    double best_v = row[0];
    for (ActionId a = 1; a < n_actions_; ++a) {
        if (row[a] > best_v) {
            best_v = row[a];
            best = a;
        }
    }
    return {best, best_v};
}

double QTable::max_value(StateId s) const { return greedy(s).second; }

std::size_t QTable::nonzero_entries() const {
    std::size_t n = 0;
    for (const auto& [s, row] : rows_)
        n += static_cast<std::size_t>(std::count_if(row.begin(), row.end(),
                                                    [](double v) { return v != 0.0; }));
    return n;
}

void QTable::save(const std::string& path) const {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os.write(kMagic, sizeof(kMagic));
    write_pod(os, n_states_);
    write_pod(os, n_actions_);
    write_pod(os, fingerprint_);
    write_pod(os, static_cast<std::uint64_t>(nonzero_entries()));

    // Sorted by state then action so saves are byte-identical across runs.
    std::vector<StateId> states;
    states.reserve(rows_.size());
    for (const auto& [s, row] : rows_) states.push_back(s);
    std::sort(states.begin(), states.end());
    for (StateId s : states) {
        const auto& row = rows_.at(s);
        for (ActionId a = 0; a < n_actions_; ++a) {
            if (row[a] == 0.0) continue;
            write_pod(os, s);
            write_pod(os, a);
            write_pod(os, row[a]);
        }
    }
    if (!os) throw std::runtime_error("write failed: " + path);
}

QTable QTable::load(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open for reading: " + path);
    char magic[8];
    is.read(magic, sizeof(magic));
    if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw std::runtime_error("not a q-table file: " + path);
    const auto n_states = read_pod<std::uint32_t>(is);
    const auto n_actions = read_pod<std::uint32_t>(is);
    const auto fingerprint = read_pod<std::uint64_t>(is);
    const auto count = read_pod<std::uint64_t>(is);
    QTable t(n_states, n_actions, fingerprint);
    for (std::uint64_t i = 0; i < count; ++i) {
        const auto s = read_pod<StateId>(is);
        const auto a = read_pod<ActionId>(is);
        const auto v = read_pod<double>(is);
        t.set(s, a, v);
    }
    return t;
}

QTable QTable::load(const std::string& path, const Grid& expected_grid) {
    QTable t = load(path);
    if (t.grid_fingerprint() != expected_grid.fingerprint())
        throw std::runtime_error("q-table grid fingerprint does not match the active config: " +
                                 path);
    return t;
}

bool QTable::operator==(const QTable& o) const {
    if (n_states_ != o.n_states_ || n_actions_ != o.n_actions_ ||
        fingerprint_ != o.fingerprint_)
        return false;
    // Compare as sparse maps: a missing row equals an all-zero row.
    auto covered_by = [&](const QTable& a, const QTable& b) {
        for (const auto& [s, row] : a.rows_)
            for (ActionId act = 0; act < a.n_actions_; ++act)
                if (row[act] != b.value(s, act)) return false;
        return true;
    };
    return covered_by(*this, o) && covered_by(o, *this);
}

}  // namespace ctql
