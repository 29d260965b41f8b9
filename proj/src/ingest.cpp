#include "volcp/ingest.hpp"

#include "volcp/csv.hpp"
#include "volcp/error.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>

namespace volcp {

namespace {

// Cells keyed by (date, ticker); nullopt marks a missing value.
struct Grid {
    std::vector<std::string> dates;
    std::vector<std::string> tickers;
    std::vector<std::vector<std::optional<double>>> cells;  // [date][ticker]
};

Grid read_wide(std::istream& is) {
    std::string line;
    if (!csv::next_line(is, line)) throw InputError("CSV is empty");
    const auto header = csv::split_line(line);
    if (header.size() < 2 || header[0] != "date") throw InputError("CSV header must be 'date,<ticker>,...'");
    std::vector<std::string> columns(header.begin() + 1, header.end());
    std::set<std::string> seen;
    for (const auto& c : columns) {
        if (c.empty()) throw InputError("CSV header has an empty ticker");
        if (!seen.insert(c).second) throw InputError("duplicate ticker '" + c + "'");
    }
    // Columns are reordered by ticker name.
    std::vector<std::size_t> perm(columns.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](auto l, auto r) { return columns[l] < columns[r]; });

    Grid g;
    for (auto k : perm) g.tickers.push_back(columns[k]);
    std::size_t lineno = 1;
    while (csv::next_line(is, line)) {
        ++lineno;
        const auto cells = csv::split_line(line);
        if (cells.size() != header.size()) {
            throw InputError("CSV line " + std::to_string(lineno) + " has " + std::to_string(cells.size()) +
                             " cells, expected " + std::to_string(header.size()));
        }
        check_iso_date(cells[0]);
        g.dates.push_back(cells[0]);
        std::vector<std::optional<double>> row;
        row.reserve(perm.size());
        for (auto k : perm) row.push_back(csv::parse_cell(cells[k + 1], "(" + cells[0] + ", " + columns[k] + ")"));
        g.cells.push_back(std::move(row));
    }
    return g;
}

Grid read_long(std::istream& is) {
    std::string line;
    if (!csv::next_line(is, line)) throw InputError("CSV is empty");
    const auto header = csv::split_line(line);
    if (header.size() != 3 || header[0] != "date" || header[1] != "ticker") {
        throw InputError("long-format CSV header must be 'date,ticker,close'");
    }
    std::map<std::string, std::map<std::string, std::optional<double>>> by_date;
    std::set<std::string> tickers;
    std::size_t lineno = 1;
    while (csv::next_line(is, line)) {
        ++lineno;
        const auto cells = csv::split_line(line);
        if (cells.size() != 3) throw InputError("CSV line " + std::to_string(lineno) + " must have 3 cells");
        check_iso_date(cells[0]);
        if (cells[1].empty()) throw InputError("CSV line " + std::to_string(lineno) + " has an empty ticker");
        auto& slot = by_date[cells[0]];
        if (slot.contains(cells[1])) {
            throw InputError("duplicate entry for (" + cells[0] + ", " + cells[1] + ")");
        }
        slot[cells[1]] = csv::parse_cell(cells[2], "(" + cells[0] + ", " + cells[1] + ")");
        tickers.insert(cells[1]);
    }
    Grid g;
    g.tickers.assign(tickers.begin(), tickers.end());
    for (const auto& [date, row] : by_date) {
        g.dates.push_back(date);
        std::vector<std::optional<double>> cells;
        for (const auto& t : g.tickers) {
            const auto it = row.find(t);
            cells.push_back(it == row.end() ? std::nullopt : it->second);
        }
        g.cells.push_back(std::move(cells));
    }
    return g;
}

// Sorts rows by date, rejects duplicates and applies the missing-cell policy.
LoadReport settle(Grid& g, MissingPolicy policy) {
    std::vector<std::size_t> order(g.dates.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto l, auto r) { return g.dates[l] < g.dates[r]; });
    Grid sorted;
    sorted.tickers = g.tickers;
    LoadReport report;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const auto& date = g.dates[order[k]];
        if (k > 0 && date == g.dates[order[k - 1]]) throw InputError("duplicate date " + date);
        auto& row = g.cells[order[k]];
        bool missing = false;
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (row[c]) continue;
            if (policy == MissingPolicy::error) {
                throw InputError("missing value at (" + date + ", " + g.tickers[c] + ")");
            }
            missing = true;
        }
        if (missing) {
            report.dropped_dates.push_back(date);
            continue;
        }
        sorted.dates.push_back(date);
        sorted.cells.push_back(std::move(row));
    }
    g = std::move(sorted);
    return report;
}

Eigen::MatrixXd to_matrix(const Grid& g) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(g.dates.size()), static_cast<Eigen::Index>(g.tickers.size()));
    for (std::size_t r = 0; r < g.dates.size(); ++r) {
        for (std::size_t c = 0; c < g.tickers.size(); ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = *g.cells[r][c];
        }
    }
    return m;
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw InputError("cannot open " + path.string());
    return is;
}

}  // namespace

MissingPolicy parse_missing_policy(const std::string& name) {
    if (name == "error") return MissingPolicy::error;
    if (name == "drop_rows") return MissingPolicy::drop_rows;
    throw InputError("unknown missing-data policy '" + name + "' (expected error or drop_rows)");
}

std::string to_string(MissingPolicy p) { return p == MissingPolicy::error ? "error" : "drop_rows"; }

void check_iso_date(const std::string& date) {
    using namespace std::chrono;
    const auto bad = [&] { return InputError("invalid ISO-8601 date '" + date + "'"); };
    if (date.size() != 10 || date[4] != '-' || date[7] != '-') throw bad();
    for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9}) {
        if (date[i] < '0' || date[i] > '9') throw bad();
    }
    const int y = std::stoi(date.substr(0, 4));
    const unsigned mo = static_cast<unsigned>(std::stoi(date.substr(5, 2)));
    const unsigned d = static_cast<unsigned>(std::stoi(date.substr(8, 2)));
    if (!year_month_day{year{y}, month{mo}, day{d}}.ok()) throw bad();
}

std::string LoadReport::to_text() const {
    std::string out = "dropped_rows: " + std::to_string(dropped_dates.size()) + "\n";
    for (const auto& d : dropped_dates) out += d + "\n";
    return out;
}

LoadedPrices parse_prices(std::istream& is, MissingPolicy policy, bool long_format) {
    Grid g = long_format ? read_long(is) : read_wide(is);
    auto report = settle(g, policy);
    for (std::size_t r = 0; r < g.dates.size(); ++r) {
        for (std::size_t c = 0; c < g.tickers.size(); ++c) {
            const double v = *g.cells[r][c];
            if (!(v > 0.0) || !std::isfinite(v)) {
                throw InputError("non-positive price at (" + g.dates[r] + ", " + g.tickers[c] + ")");
            }
        }
    }
    return {PriceTable{g.dates, g.tickers, to_matrix(g)}, std::move(report)};
}

LoadedPrices read_prices(const std::filesystem::path& path, MissingPolicy policy, bool long_format) {
    auto is = open_input(path);
    return parse_prices(is, policy, long_format);
}

ReturnsTable log_returns(const PriceTable& p) {
    if (p.dates.size() < 2) throw InputError("log returns need at least two dates");
    if (p.prices.rows() != static_cast<Eigen::Index>(p.dates.size()) ||
        p.prices.cols() != static_cast<Eigen::Index>(p.tickers.size())) {
        throw InputError("price table shape does not match its labels");
    }
    for (Eigen::Index r = 0; r < p.prices.rows(); ++r) {
        for (Eigen::Index c = 0; c < p.prices.cols(); ++c) {
            const double v = p.prices(r, c);
            if (!(v > 0.0) || !std::isfinite(v)) {
                throw InputError("non-positive price at (" + p.dates[static_cast<std::size_t>(r)] + ", " +
                                 p.tickers[static_cast<std::size_t>(c)] + ")");
            }
        }
    }
    const Eigen::MatrixXd logs = p.prices.array().log().matrix();
    const auto rows = logs.rows() - 1;
    ReturnsTable r;
    r.dates.assign(p.dates.begin() + 1, p.dates.end());
    r.tickers = p.tickers;
    r.returns = logs.bottomRows(rows) - logs.topRows(rows);
    return r;
}

void write_returns_csv(std::ostream& os, const ReturnsTable& r) {
    os << "date";
    for (const auto& t : r.tickers) os << ',' << t;
    os << '\n';
    for (std::size_t i = 0; i < r.dates.size(); ++i) {
        os << r.dates[i];
        for (Eigen::Index c = 0; c < r.returns.cols(); ++c) {
            os << ',' << csv::format_double(r.returns(static_cast<Eigen::Index>(i), c));
        }
        os << '\n';
    }
}

LoadedReturns parse_returns(std::istream& is, MissingPolicy policy) {
    Grid g = read_wide(is);
    auto report = settle(g, policy);
    for (std::size_t r = 0; r < g.dates.size(); ++r) {
        for (std::size_t c = 0; c < g.tickers.size(); ++c) {
            if (!std::isfinite(*g.cells[r][c])) {
                throw InputError("non-finite return at (" + g.dates[r] + ", " + g.tickers[c] + ")");
            }
        }
    }
    return {ReturnsTable{g.dates, g.tickers, to_matrix(g)}, std::move(report)};
}

LoadedReturns read_returns(const std::filesystem::path& path, MissingPolicy policy) {
    auto is = open_input(path);
    return parse_returns(is, policy);
}

}  // namespace volcp
