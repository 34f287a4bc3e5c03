#include "herit/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace herit {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw ParseError(path + ": file is empty", 1);
  return lines;
}

double parse_double(const std::string& cell, long line, long column,
                    const std::string& path) {
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError(path + ": cannot parse number '" + cell + "' at line " +
                         std::to_string(line) + ", column " + std::to_string(column),
                     line, column);
  }
  return value;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open file for writing: " + path);
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace

std::vector<std::string> default_snp_ids(Index n_snps) {
  std::vector<std::string> ids;
  ids.reserve(static_cast<std::size_t>(n_snps));
  for (Index j = 0; j < n_snps; ++j) ids.push_back("snp" + std::to_string(j + 1));
  return ids;
}

void write_genotypes_csv(const std::string& path, const GenotypeMatrix& w,
                         const std::vector<std::string>& snp_ids) {
  if (static_cast<Index>(snp_ids.size()) != w.snp_count()) {
    throw DimensionMismatch("snp id count != SNP count");
  }
  std::string out;
  out.reserve(static_cast<std::size_t>(w.n()) * static_cast<std::size_t>(w.snp_count()) * 2 +
              snp_ids.size() * 8);
  for (std::size_t j = 0; j < snp_ids.size(); ++j) {
    if (j) out += ',';
    out += snp_ids[j];
  }
  out += '\n';
  for (Index i = 0; i < w.n(); ++i) {
    for (Index j = 0; j < w.snp_count(); ++j) {
      if (j) out += ',';
      out += static_cast<char>('0' + w.values()(i, j));
    }
    out += '\n';
  }
  write_file(path, out);
}

GenotypeMatrix read_genotypes_csv(const std::string& path,
                                  std::vector<std::string>* snp_ids) {
  const auto lines = read_lines(path);
  const auto header = split_line(lines[0]);
  const auto n_snps = static_cast<Index>(header.size());
  const auto n = static_cast<Index>(lines.size()) - 1;
  if (n < 2) throw ParseError(path + ": need at least two individuals", 2);

  GenotypeValues values(n, n_snps);
  for (Index i = 0; i < n; ++i) {
    const long line_no = i + 2;
    const auto cells = split_line(lines[static_cast<std::size_t>(i) + 1]);
    if (static_cast<Index>(cells.size()) != n_snps) {
      throw ParseError(path + ": line " + std::to_string(line_no) + " has " +
                           std::to_string(cells.size()) + " cells, expected " +
                           std::to_string(n_snps),
                       line_no);
    }
    for (Index j = 0; j < n_snps; ++j) {
      const std::string& cell = cells[static_cast<std::size_t>(j)];
      if (cell.size() != 1 || cell[0] < '0' || cell[0] > '2') {
        throw ParseError(path + ": genotype '" + cell + "' is not in {0,1,2} at line " +
                             std::to_string(line_no) + ", column " + std::to_string(j + 1),
                         line_no, j + 1);
      }
      values(i, j) = static_cast<std::int8_t>(cell[0] - '0');
    }
  }
  if (snp_ids) *snp_ids = header;
  return GenotypeMatrix(std::move(values));
}

void write_phenotype_csv(const std::string& path, const Vector& y,
                         const std::string& name) {
  std::ostringstream out;
  out.precision(17);
  out << name << '\n';
  for (Index i = 0; i < y.size(); ++i) out << y(i) << '\n';
  write_file(path, out.str());
}

Vector read_phenotype_csv(const std::string& path) {
  const auto lines = read_lines(path);
  Vector y(static_cast<Index>(lines.size()) - 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    y(static_cast<Index>(i) - 1) =
        parse_double(lines[i], static_cast<long>(i) + 1, 1, path);
  }
  if (!y.allFinite()) throw ParseError(path + ": phenotype contains non-finite values", 2);
  return y;
}

void write_covariates_csv(const std::string& path, const Matrix& x,
                          const std::vector<std::string>& names) {
  if (static_cast<Index>(names.size()) != x.cols()) {
    throw DimensionMismatch("covariate name count != columns");
  }
  std::ostringstream out;
  out.precision(17);
  for (std::size_t j = 0; j < names.size(); ++j) {
    if (j) out << ',';
    out << names[j];
  }
  out << '\n';
  for (Index i = 0; i < x.rows(); ++i) {
    for (Index j = 0; j < x.cols(); ++j) {
      if (j) out << ',';
      out << x(i, j);
    }
    out << '\n';
  }
  write_file(path, out.str());
}

Matrix read_covariates_csv(const std::string& path) {
  const auto lines = read_lines(path);
  const auto header = split_line(lines[0]);
  const auto p = static_cast<Index>(header.size());
  Matrix x(static_cast<Index>(lines.size()) - 1, p);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = split_line(lines[i]);
    if (static_cast<Index>(cells.size()) != p) {
      throw ParseError(path + ": line " + std::to_string(i + 1) + " has " +
                           std::to_string(cells.size()) + " cells, expected " +
                           std::to_string(p),
                       static_cast<long>(i) + 1);
    }
    for (Index j = 0; j < p; ++j) {
      x(static_cast<Index>(i) - 1, j) = parse_double(
          cells[static_cast<std::size_t>(j)], static_cast<long>(i) + 1, j + 1, path);
    }
  }
  if (!x.allFinite()) throw ParseError(path + ": covariates contain non-finite values", 2);
  return x;
}

}  // namespace herit
