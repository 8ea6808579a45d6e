#include "tradeq/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "tradeq/structure_builder.hpp"

namespace tradeq::io {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(std::string_view line, char delimiter) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(delimiter, start);
        fields.emplace_back(trim(line.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return fields;
}

char detect_delimiter(std::string_view header) {
    for (char candidate : {',', '\t', ';'}) {
        if (header.find(candidate) != std::string_view::npos) return candidate;
    }
    return ',';
}

/// Reads lines, stripping a UTF-8 BOM and CR, skipping blank lines.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    bool next(std::string& line) {
        while (std::getline(in_, line)) {
            ++number_;
            if (number_ == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!trim(line).empty()) return true;
        }
        return false;
    }

    [[nodiscard]] std::size_t number() const noexcept { return number_; }

private:
    std::istream& in_;
    std::size_t number_ = 0;
};

std::ifstream open(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError(ErrorKind::IoError, path.string(), 0, 0, "cannot open file");
    }
    return in;
}

std::size_t intern(std::vector<std::string>& labels,
                   std::unordered_map<std::string, std::size_t>& index, const std::string& label) {
    const auto [it, inserted] = index.try_emplace(label, labels.size());
    if (inserted) labels.push_back(label);
    return it->second;
}

std::vector<std::string> read_header(LineReader& reader, const std::string& source,
                                     char& delimiter) {
    std::string line;
    if (!reader.next(line)) {
        throw InputError(ErrorKind::EmptyInput, source, 0, 0, "file is empty");
    }
    delimiter = detect_delimiter(line);
    return split(line, delimiter);
}

std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool header_matches(const std::vector<std::string>& header,
                    const std::vector<std::string_view>& expected) {
    if (header.size() != expected.size()) return false;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (lowercase(header[i]) != expected[i]) return false;
    }
    return true;
}

std::vector<std::size_t> permutation_onto(const std::vector<std::string>& from,
                                          const std::vector<std::string>& to,
                                          const std::string& what) {
    if (from.size() != to.size() ||
        std::set<std::string>(from.begin(), from.end()) != std::set<std::string>(to.begin(), to.end())) {
        throw Error(ErrorKind::LabelMismatch, what + " labels do not match the import data");
    }
    std::vector<std::size_t> perm(to.size());
    for (std::size_t i = 0; i < to.size(); ++i) {
        perm[i] = static_cast<std::size_t>(std::find(from.begin(), from.end(), to[i]) - from.begin());
    }
    return perm;
}

}  // namespace

std::optional<double> parse_number(std::string_view text) {
    text = trim(text);
    if (text.empty()) return std::nullopt;
    std::size_t i = 0;
    if (text[i] == '+' || text[i] == '-') ++i;
    std::size_t digits = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i, ++digits;
    if (i < text.size() && text[i] == '.') {
        ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i, ++digits;
    }
    if (digits == 0) return std::nullopt;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
        std::size_t exponent_digits = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            ++i, ++exponent_digits;
        }
        if (exponent_digits == 0) return std::nullopt;
    }
    if (i != text.size()) return std::nullopt;

    // from_chars rejects a leading '+'.
    if (text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

BilateralFlowSet parse_flows(std::istream& in, const std::string& source) {
    LineReader reader(in);
    char delimiter = ',';
    const auto header = read_header(reader, source, delimiter);
    if (!header_matches(header, {"exporter", "importer", "good", "quantity"})) {
        throw InputError(ErrorKind::ParseError, source, reader.number(), 0,
                         "expected header exporter,importer,good,quantity");
    }

    struct Row {
        std::size_t exporter, importer, good;
        double quantity;
    };
    BilateralFlowSet set;
    std::unordered_map<std::string, std::size_t> country_index;
    std::unordered_map<std::string, std::size_t> good_index;
    std::vector<Row> rows;
    std::string line;
    while (reader.next(line)) {
        const auto fields = split(line, delimiter);
        if (fields.size() != 4) {
            throw InputError(ErrorKind::ParseError, source, reader.number(), 0,
                             "expected 4 fields, found " + std::to_string(fields.size()));
        }
        for (std::size_t f = 0; f < 3; ++f) {
            if (fields[f].empty()) {
                throw InputError(ErrorKind::ParseError, source, reader.number(), f + 1,
                                 "empty identifier");
            }
        }
        const auto quantity = parse_number(fields[3]);
        if (!quantity) {
            throw InputError(ErrorKind::ParseError, source, reader.number(), 4,
                             "quantity '" + fields[3] + "' is not a number");
        }
        if (*quantity < 0.0) {
            throw InputError(ErrorKind::NegativeQuantity, source, reader.number(), 4,
                             "quantity must be >= 0");
        }
        if (fields[0] == fields[1]) {
            throw InputError(ErrorKind::SelfFlow, source, reader.number(), 0,
                             "country '" + fields[0] + "' cannot trade with itself");
        }
        const std::size_t exporter = intern(set.countries, country_index, fields[0]);
        const std::size_t importer = intern(set.countries, country_index, fields[1]);
        const std::size_t good = intern(set.goods, good_index, fields[2]);
        rows.push_back({exporter, importer, good, *quantity});
    }
    if (rows.empty()) {
        throw InputError(ErrorKind::EmptyInput, source, 0, 0, "no flow rows after the header");
    }

    const auto n = static_cast<Index>(set.goods.size());
    for (const Row& row : rows) {
        auto [it, inserted] = set.flows.try_emplace(CountryPair{row.exporter, row.importer},
                                                    Vector::Zero(n));
        it->second(static_cast<Index>(row.good)) += row.quantity;
    }
    return set;
}

BilateralFlowSet load_flows(const std::filesystem::path& path) {
    auto in = open(path);
    return parse_flows(in, path.string());
}

LabelledMatrix parse_matrix(std::istream& in, const std::string& source) {
    LineReader reader(in);
    char delimiter = ',';
    auto header = read_header(reader, source, delimiter);
    if (header.size() < 2) {
        throw InputError(ErrorKind::EmptyInput, source, reader.number(), 0,
                         "header has no column labels");
    }
    LabelledMatrix grid;
    grid.column_labels.assign(header.begin() + 1, header.end());
    if (std::set<std::string>(grid.column_labels.begin(), grid.column_labels.end()).size() !=
        grid.column_labels.size()) {
        throw InputError(ErrorKind::ParseError, source, reader.number(), 0,
                         "duplicate column label");
    }

    std::vector<std::vector<double>> rows;
    std::set<std::string> seen;
    std::string line;
    while (reader.next(line)) {
        const auto fields = split(line, delimiter);
        if (fields.size() != header.size()) {
            throw InputError(ErrorKind::RaggedRows, source, reader.number(), 0,
                             "row has " + std::to_string(fields.size()) + " cells, header has " +
                                 std::to_string(header.size()));
        }
        if (fields[0].empty() || !seen.insert(fields[0]).second) {
            throw InputError(ErrorKind::ParseError, source, reader.number(), 1,
                             "missing or duplicate row label");
        }
        std::vector<double> row;
        row.reserve(fields.size() - 1);
        for (std::size_t c = 1; c < fields.size(); ++c) {
            const auto value = parse_number(fields[c]);
            if (!value) {
                throw InputError(ErrorKind::NonNumericCell, source, reader.number(), c + 1,
                                 "cell '" + fields[c] + "' is not a number");
            }
            row.push_back(*value);
        }
        grid.row_labels.push_back(fields[0]);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw InputError(ErrorKind::EmptyInput, source, 0, 0, "no data rows after the header");
    }

    grid.values.resize(static_cast<Index>(rows.size()), static_cast<Index>(grid.column_labels.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            grid.values(static_cast<Index>(r), static_cast<Index>(c)) = rows[r][c];
        }
    }
    return grid;
}

LabelledMatrix load_matrix(const std::filesystem::path& path) {
    auto in = open(path);
    return parse_matrix(in, path.string());
}

LabelledImports to_imports(LabelledMatrix grid) {
    return {std::move(grid.row_labels), std::move(grid.column_labels),
            ImportMatrix(std::move(grid.values))};
}

LabelledTau to_tau(LabelledMatrix grid) {
    return {std::move(grid.row_labels), std::move(grid.column_labels), normalize_tau(grid.values)};
}

LabelledReduction to_reduction(LabelledMatrix grid) {
    if (grid.values.rows() == 1) {
        return {std::move(grid.column_labels), ReductionVector(grid.values.row(0).transpose())};
    }
    if (grid.values.cols() == 1) {
        return {std::move(grid.row_labels), ReductionVector(grid.values.col(0))};
    }
    throw Error(ErrorKind::DimensionMismatch, "reduction grid must have a single row or column");
}

LabelledReduction parse_reduction_list(std::string_view list,
                                       const std::vector<std::string>& goods) {
    const auto fields = split(list, ',');
    Vector values(static_cast<Index>(fields.size()));
    for (std::size_t i = 0; i < fields.size(); ++i) {
        const auto value = parse_number(fields[i]);
        if (!value) {
            throw InputError(ErrorKind::ParseError, "--reduction", 0, i + 1,
                             "'" + fields[i] + "' is not a number");
        }
        values(static_cast<Index>(i)) = *value;
    }
    require_shape(fields.size() == goods.size(),
                  "reduction list has " + std::to_string(fields.size()) + " entries for " +
                      std::to_string(goods.size()) + " goods");
    return {goods, ReductionVector(std::move(values))};
}

LabelledSchedule parse_reduction_schedule(std::istream& in, const std::string& source) {
    LineReader reader(in);
    char delimiter = ',';
    const auto header = read_header(reader, source, delimiter);
    if (!header_matches(header, {"importer", "exporter", "good", "factor"})) {
        throw InputError(ErrorKind::ParseError, source, reader.number(), 0,
                         "expected header importer,exporter,good,factor");
    }
    LabelledSchedule out;
    std::unordered_map<std::string, std::size_t> country_index;
    std::unordered_map<std::string, std::size_t> good_index;
    std::map<CountryPair, std::map<std::size_t, double>> cells;
    std::string line;
    while (reader.next(line)) {
        const auto fields = split(line, delimiter);
        if (fields.size() != 4 || fields[0].empty() || fields[1].empty() || fields[2].empty()) {
            throw InputError(ErrorKind::ParseError, source, reader.number(), 0,
                             "expected importer,exporter,good,factor");
        }
        const auto factor = parse_number(fields[3]);
        if (!factor) {
            throw InputError(ErrorKind::ParseError, source, reader.number(), 4,
                             "factor '" + fields[3] + "' is not a number");
        }
        if (fields[0] == fields[1]) {
            throw InputError(ErrorKind::SelfFlow, source, reader.number(), 0,
                             "a country cannot restrict itself");
        }
        const CountryPair pair{intern(out.countries, country_index, fields[0]),
                               intern(out.countries, country_index, fields[1])};
        const std::size_t good = intern(out.goods, good_index, fields[2]);
        if (!cells[pair].emplace(good, *factor).second) {
            throw InputError(ErrorKind::ParseError, source, reader.number(), 0,
                             "duplicate entry for this pair and good");
        }
    }
    if (cells.empty()) {
        throw InputError(ErrorKind::EmptyInput, source, 0, 0, "no schedule rows after the header");
    }
    const auto n = static_cast<Index>(out.goods.size());
    for (const auto& [pair, by_good] : cells) {
        if (static_cast<Index>(by_good.size()) != n) {
            throw InputError(ErrorKind::ParseError, source, 0, 0,
                             "pair (" + out.countries[pair.origin] + "," +
                                 out.countries[pair.destination] + ") does not list every good");
        }
        Vector values(n);
        for (const auto& [good, factor] : by_good) values(static_cast<Index>(good)) = factor;
        out.schedule.factors.emplace(pair, std::move(values));
    }
    validate_factors(out.schedule.factors);
    return out;
}

bool is_reduction_schedule(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    LineReader reader(in);
    std::string line;
    if (!reader.next(line)) return false;
    return header_matches(split(line, detect_delimiter(line)),
                          {"importer", "exporter", "good", "factor"});
}

LabelledTau align_tau(const LabelledTau& tau, const std::vector<std::string>& countries,
                      const std::vector<std::string>& goods) {
    const auto rows = permutation_onto(tau.countries, countries, "allocation country");
    const auto cols = permutation_onto(tau.goods, goods, "allocation good");
    Matrix values(tau.tau.rows(), tau.tau.cols());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            values(static_cast<Index>(r), static_cast<Index>(c)) =
                tau.tau(static_cast<Index>(rows[r]), static_cast<Index>(cols[c]));
        }
    }
    return {countries, goods, TauMatrix(std::move(values))};
}

LabelledReduction align_reduction(const LabelledReduction& reduction,
                                  const std::vector<std::string>& goods) {
    const auto perm = permutation_onto(reduction.goods, goods, "reduction good");
    Vector values(static_cast<Index>(perm.size()));
    for (std::size_t i = 0; i < perm.size(); ++i) {
        values(static_cast<Index>(i)) = reduction.reduction[static_cast<Index>(perm[i])];
    }
    return {goods, ReductionVector(std::move(values))};
}

ReductionSchedule align_schedule(const LabelledSchedule& schedule,
                                 const std::vector<std::string>& countries,
                                 const std::vector<std::string>& goods) {
    const auto good_perm = permutation_onto(schedule.goods, goods, "reduction schedule good");
    auto country_of = [&](std::size_t local) {
        const auto it = std::find(countries.begin(), countries.end(), schedule.countries[local]);
        if (it == countries.end()) {
            throw Error(ErrorKind::LabelMismatch, "reduction schedule country '" +
                                                      schedule.countries[local] + "' is unknown");
        }
        return static_cast<std::size_t>(it - countries.begin());
    };
    ReductionSchedule out;
    for (const auto& [pair, values] : schedule.schedule.factors) {
        Vector aligned(values.size());
        for (std::size_t i = 0; i < good_perm.size(); ++i) {
            aligned(static_cast<Index>(i)) = values(static_cast<Index>(good_perm[i]));
        }
        out.factors.emplace(CountryPair{country_of(pair.origin), country_of(pair.destination)},
                            std::move(aligned));
    }
    return out;
}

void write_file_atomically(const std::filesystem::path& path, std::string_view content) {
    std::filesystem::path temp = path;
    temp += ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError(ErrorKind::IoError, temp.string(), 0, 0, "cannot write file");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw InputError(ErrorKind::IoError, temp.string(), 0, 0, "write failed");
    }
    std::error_code ec;
    std::filesystem::rename(temp, path, ec);
    if (ec) {
        std::filesystem::remove(temp, ec);
        throw InputError(ErrorKind::IoError, path.string(), 0, 0, "cannot replace file");
    }
}

}  // namespace tradeq::io
