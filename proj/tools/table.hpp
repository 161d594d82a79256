#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace sumnorm::cli {

// Plain-text table with left-aligned columns separated by two spaces.
class Table {
public:
    explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
    [[nodiscard]] bool empty() const { return rows_.empty(); }

    void print(std::ostream& out) const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

}  // namespace sumnorm::cli
