#pragma once

#include "relcheck/factorization.hpp"
#include "relcheck/finite_category.hpp"
#include "relcheck/table_double.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace relcheck {

// what() reads "<source>:<line>: <message>"; line 0 means the whole input.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string source, int line, const std::string& message);
    const std::string& source() const { return source_; }
    int line() const { return line_; }
    const std::string& message() const { return message_; }

private:
    std::string source_;
    int line_;
    std::string message_;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view text);

// "finset(N)" -> N.
std::optional<int> parse_finset_literal(std::string_view text);

// .fcat
std::shared_ptr<FiniteCategory> parse_fcat(std::string_view text, const std::string& source = "<input>");
std::string emit_fcat(const FiniteCategory& c);
// A finset(N) literal or a .fcat path.
std::shared_ptr<const Category> load_category(const std::string& spec);

// .fs, names resolved against `c`.
std::shared_ptr<TableFS> parse_fs(std::string_view text, const Category& c, const std::string& source = "<input>");
std::string emit_fs(const FactorizationSystem& fs);
// "epimono" (finset(N) only) or a .fs path.
std::shared_ptr<const FactorizationSystem> load_fs(const std::string& spec, const Category& c,
                                                   const std::string& category_spec);

// .dblcat
std::unique_ptr<TableDouble> parse_dblcat(std::string_view text, const std::string& source = "<input>");
std::string emit_dblcat(const TableDouble& d);

}  // namespace relcheck
