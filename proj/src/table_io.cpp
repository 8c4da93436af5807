#include "aecoupler/table_io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace aecoupler {

std::string format_number(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15g", value);
    return buf;
}

void Table::start_row() {
    rows_.emplace_back();
    rows_.back().reserve(columns_.size());
}

void Table::push(double value) {
    rows_.back().push_back(format_number(value));
}

void Table::push(std::optional<double> value) {
    rows_.back().push_back(value ? format_number(*value) : std::string("NA"));
}

void Table::push(std::string cell) {
    rows_.back().push_back(std::move(cell));
}

std::string Table::to_csv() const {
    std::string out;
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (i) out += ',';
        out += columns_[i];
    }
    out += '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i];
        }
        out += '\n';
    }
    return out;
}

void MetadataRecord::set(const std::string& key, const std::string& value) {
    for (auto& entry : entries_) {
        if (entry.first == key) {
            entry.second = value;
            return;
        }
    }
    entries_.emplace_back(key, value);
}

void MetadataRecord::set(const std::string& key, double value) {
    set(key, format_number(value));
}

void MetadataRecord::set(const std::string& key, std::size_t value) {
    set(key, std::to_string(value));
}

std::string MetadataRecord::to_text() const {
    std::string out;
    for (const auto& [key, value] : entries_) {
        out += key;
        out += '=';
        out += value;
        out += '\n';
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    out << contents;
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

} // namespace aecoupler
