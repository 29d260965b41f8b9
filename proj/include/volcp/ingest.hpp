#pragma once

#include <Eigen/Core>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace volcp {

enum class MissingPolicy { error, drop_rows };

MissingPolicy parse_missing_policy(const std::string& name);
std::string to_string(MissingPolicy p);

// Dates are ISO-8601 (YYYY-MM-DD) labels in strictly increasing order;
// tickers are sorted so the table does not depend on CSV column order.
struct PriceTable {
    std::vector<std::string> dates;
    std::vector<std::string> tickers;
    Eigen::MatrixXd prices;  // dates x tickers, all > 0
};

// Row r holds y_r = log p_{r+1} - log p_r, labelled with the later date.
struct ReturnsTable {
    std::vector<std::string> dates;
    std::vector<std::string> tickers;
    Eigen::MatrixXd returns;  // dates x tickers, all finite
};

struct LoadReport {
    std::vector<std::string> dropped_dates;
    std::string to_text() const;
};

struct LoadedPrices {
    PriceTable table;
    LoadReport report;
};

struct LoadedReturns {
    ReturnsTable table;
    LoadReport report;
};

// Wide layout "date,<t1>,<t2>,..." or, with long_format, "date,ticker,close".
LoadedPrices parse_prices(std::istream& is, MissingPolicy policy, bool long_format = false);
LoadedPrices read_prices(const std::filesystem::path& path, MissingPolicy policy, bool long_format = false);

ReturnsTable log_returns(const PriceTable& p);

void write_returns_csv(std::ostream& os, const ReturnsTable& r);
LoadedReturns parse_returns(std::istream& is, MissingPolicy policy = MissingPolicy::error);
LoadedReturns read_returns(const std::filesystem::path& path, MissingPolicy policy = MissingPolicy::error);

// Throws InputError unless `date` is a valid ISO-8601 calendar date.
void check_iso_date(const std::string& date);

}  // namespace volcp
