#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tradeq/tariff.hpp"
#include "tradeq/trade_core.hpp"

namespace tradeq::io {

/// Grid read from a matrix file: first row holds column labels after a
/// corner cell, first column holds row labels.
struct LabelledMatrix {
    std::vector<std::string> row_labels;
    std::vector<std::string> column_labels;
    Matrix values;
};

struct LabelledImports {
    std::vector<std::string> goods;
    std::vector<std::string> countries;
    ImportMatrix imports;
};

struct LabelledTau {
    std::vector<std::string> countries;
    std::vector<std::string> goods;
    TauMatrix tau;
};

struct LabelledReduction {
    std::vector<std::string> goods;
    ReductionVector reduction;
};

struct LabelledSchedule {
    std::vector<std::string> countries;
    std::vector<std::string> goods;
    ReductionSchedule schedule;
};

/// Decimal or scientific notation with an optional sign. Rejects hex,
/// inf/nan, digit grouping and comma decimal separators.
std::optional<double> parse_number(std::string_view text);

/// Long-form flows with header "exporter,importer,good,quantity". The
/// delimiter (comma, tab or semicolon) is taken from the header. Countries
/// and goods are ordered by first appearance; duplicate rows are summed.
///
/// Throws InputError with kind ParseError, SelfFlow, NegativeQuantity or
/// EmptyInput.
BilateralFlowSet parse_flows(std::istream& in, const std::string& source);
BilateralFlowSet load_flows(const std::filesystem::path& path);

/// Throws InputError with kind RaggedRows, NonNumericCell, ParseError or
/// EmptyInput.
LabelledMatrix parse_matrix(std::istream& in, const std::string& source);
LabelledMatrix load_matrix(const std::filesystem::path& path);

/// Rows are goods, columns are countries.
LabelledImports to_imports(LabelledMatrix grid);
/// Rows are countries, columns are goods. Rows are renormalized per
/// normalize_tau.
LabelledTau to_tau(LabelledMatrix grid);
/// A single row (columns = goods) or a single column (rows = goods).
LabelledReduction to_reduction(LabelledMatrix grid);

/// Comma-separated inline list such as "0.5,1". Labels are taken from goods.
LabelledReduction parse_reduction_list(std::string_view list,
                                       const std::vector<std::string>& goods);

/// Long-form schedule with header "importer,exporter,good,factor"; a pair
/// missing a good is an error.
LabelledSchedule parse_reduction_schedule(std::istream& in, const std::string& source);

/// True when the file's first line is the reduction-schedule header.
bool is_reduction_schedule(const std::filesystem::path& path);

/// Reorders tau into the given country and good order. Throws LabelMismatch
/// if the label sets differ.
LabelledTau align_tau(const LabelledTau& tau, const std::vector<std::string>& countries,
                      const std::vector<std::string>& goods);

/// Reorders a reduction vector into the given good order. Throws
/// LabelMismatch if the label sets differ.
LabelledReduction align_reduction(const LabelledReduction& reduction,
                                  const std::vector<std::string>& goods);

/// Maps schedule country and good indices onto the given labels before
/// collapsing. Throws LabelMismatch for unknown labels.
ReductionSchedule align_schedule(const LabelledSchedule& schedule,
                                 const std::vector<std::string>& countries,
                                 const std::vector<std::string>& goods);

/// Writes to a sibling temporary file then renames it over path.
void write_file_atomically(const std::filesystem::path& path, std::string_view content);

}  // namespace tradeq::io
