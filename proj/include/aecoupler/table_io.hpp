#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace aecoupler {

/// Shortest decimal form with 15 significant digits.
std::string format_number(double value);

/// Header + rows of preformatted cells, rendered as CSV. Missing values
/// render as "NA".
class Table {
public:
    explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void start_row();
    void push(double value);
    void push(std::optional<double> value);
    void push(std::string cell);

    std::size_t row_count() const { return rows_.size(); }
    std::string to_csv() const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

/// Ordered key=value record for run metadata sidecars.
class MetadataRecord {
public:
    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, double value);
    void set(const std::string& key, std::size_t value);
    std::string to_text() const;

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

void write_text_file(const std::string& path, const std::string& contents);

} // namespace aecoupler
