#include "genevis/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <unordered_map>
#include <unordered_set>

namespace genevis {

namespace {

constexpr std::string_view kWhitespace = " \t\r\n\v\f";

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(kWhitespace);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(kWhitespace);
  return s.substr(first, last - first + 1);
}

std::string_view trim_spaces(std::string_view s) {
  // Tabs are delimiters in tab mode, so only strip blanks and CR here.
  constexpr std::string_view blanks = " \r\v\f";
  const auto first = s.find_first_not_of(blanks);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(blanks);
  return s.substr(first, last - first + 1);
}

struct Line {
  std::size_t row;  // 1-based line number in the file
  std::string_view text;
};

std::vector<Line> split_lines(std::string_view content) {
  if (content.starts_with("\xEF\xBB\xBF")) content.remove_prefix(3);
  std::vector<Line> lines;
  std::size_t row = 0;
  while (!content.empty()) {
    ++row;
    auto nl = content.find('\n');
    std::string_view line = content.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!trim(line).empty()) lines.push_back({row, line});
    if (nl == std::string_view::npos) break;
    content.remove_prefix(nl + 1);
  }
  return lines;
}

/// Header + data rows, all with the same field count.
struct Table {
  Delimiter delim = Delimiter::Comma;
  std::size_t header_row = 0;
  std::vector<std::string> header;
  std::vector<std::size_t> rows;  // line numbers of data rows
  std::vector<std::vector<std::string>> cells;
};

Table read_table(std::string_view content) {
  auto lines = split_lines(content);
  if (lines.empty()) throw Error(ErrorCode::EmptyDataset, "input is empty", Location{1, 0});
  Table t;
  t.delim = detect_delimiter(lines.front().text);
  t.header_row = lines.front().row;
  t.header = split_fields(lines.front().text, t.delim, t.header_row);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto fields = split_fields(lines[i].text, t.delim, lines[i].row);
    if (fields.size() != t.header.size()) {
      throw Error(ErrorCode::FieldCount,
                  "expected " + std::to_string(t.header.size()) + " fields, found " +
                      std::to_string(fields.size()),
                  Location{lines[i].row, std::min(fields.size(), t.header.size()) + 1});
    }
    t.rows.push_back(lines[i].row);
    t.cells.push_back(std::move(fields));
  }
  if (t.rows.empty()) throw Error(ErrorCode::EmptyDataset, "no data rows after the header", Location{t.header_row, 0});
  return t;
}

template <class Match>
std::size_t require_column(const Table& t, std::string_view name, Match match) {
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (match(t.header[i])) return i;
  }
  throw Error(ErrorCode::MissingHeader, "missing required column '" + std::string(name) + "'",
              Location{t.header_row, 0});
}

std::size_t require_exact(const Table& t, std::string_view name) {
  return require_column(t, name, [&](const std::string& h) { return h == name; });
}

std::size_t require_caseless(const Table& t, std::string_view name) {
  const auto key = normalize_label(name);
  return require_column(t, name, [&](const std::string& h) { return normalize_label(h) == key; });
}

double parse_real(std::string_view field, Location loc) {
  double value = 0.0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw Error(ErrorCode::BadNumber, "not a number: '" + std::string(field) + "'", loc);
  }
  return value;
}

double parse_unit_interval(std::string_view field, Location loc) {
  double v = parse_real(field, loc);
  if (v < 0.0 || v > 1.0) {
    throw Error(ErrorCode::BadNumber, "value " + std::string(field) + " outside [0,1]", loc);
  }
  return v;
}

GeneId parse_gene_id(std::string_view field, Location loc) {
  GeneId id = 0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, id);
  if (field.empty() || ec != std::errc{} || ptr != end || id == 0) {
    throw Error(ErrorCode::BadNumber,
                "gene id must be a positive integer: '" + std::string(field) + "'", loc);
  }
  return id;
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quote_csv(std::string_view field) {
  const bool needs = field.find_first_of(",\"") != std::string_view::npos ||
                     trim(field).size() != field.size();
  if (!needs) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string_view to_string(ClusteringKind kind) {
  return kind == ClusteringKind::Hard ? "hard" : "soft";
}

std::size_t InteractionDataset::self_loop_count() const {
  return static_cast<std::size_t>(
      std::count_if(edges.begin(), edges.end(), [](const auto& e) { return e.self_loop(); }));
}

std::string normalize_label(std::string_view label) {
  std::string out(trim(label));
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c);
  });
  return out;
}

Delimiter detect_delimiter(std::string_view first_line) {
  if (first_line.find('\t') != std::string_view::npos) return Delimiter::Tab;
  if (first_line.find(',') != std::string_view::npos) return Delimiter::Comma;
  throw Error(ErrorCode::NoDelimiter, "header line contains neither a tab nor a comma",
              Location{1, 0});
}

std::vector<std::string> split_fields(std::string_view line, Delimiter delim, std::size_t row) {
  std::vector<std::string> fields;
  const char sep = static_cast<char>(delim);
  if (delim == Delimiter::Tab) {
    std::size_t start = 0;
    while (true) {
      auto pos = line.find(sep, start);
      fields.emplace_back(trim_spaces(line.substr(start, pos - start)));
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
    return fields;
  }

  std::size_t i = 0;
  while (true) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::string field;
    if (i < line.size() && line[i] == '"') {
      ++i;
      bool closed = false;
      while (i < line.size()) {
        if (line[i] == '"') {
          if (i + 1 < line.size() && line[i + 1] == '"') {
            field += '"';
            i += 2;
            continue;
          }
          closed = true;
          ++i;
          break;
        }
        field += line[i++];
      }
      if (!closed) {
        throw Error(ErrorCode::MalformedField, "unterminated quoted field",
                    Location{row, fields.size() + 1});
      }
      while (i < line.size() && line[i] != sep) {
        if (line[i] != ' ' && line[i] != '\t') {
          throw Error(ErrorCode::MalformedField, "unexpected text after closing quote",
                      Location{row, fields.size() + 1});
        }
        ++i;
      }
    } else {
      auto pos = line.find(sep, i);
      field = std::string(trim(line.substr(i, pos == std::string_view::npos ? pos : pos - i)));
      i = pos == std::string_view::npos ? line.size() : pos;
    }
    fields.push_back(std::move(field));
    if (i >= line.size()) break;
    ++i;  // skip separator
    if (i == line.size()) {
      fields.emplace_back();
      break;
    }
  }
  return fields;
}

ClusterDataset parse_cluster_table(std::string_view content) {
  const Table t = read_table(content);
  const auto id_col = require_exact(t, "geneEntrezId");
  const auto name_col = require_exact(t, "geneName");

  std::vector<std::size_t> cluster_cols;
  ClusterDataset ds;
  for (std::size_t c = 0; c < t.header.size(); ++c) {
    if (c == id_col || c == name_col) continue;
    cluster_cols.push_back(c);
    ds.clusters.push_back(t.header[c]);
  }
  if (cluster_cols.empty()) {
    throw Error(ErrorCode::MissingHeader, "no cluster columns after geneEntrezId and geneName",
                Location{t.header_row, 0});
  }

  std::unordered_set<GeneId> seen;
  bool hard = true;
  for (std::size_t r = 0; r < t.cells.size(); ++r) {
    const auto& row = t.cells[r];
    const auto line = t.rows[r];
    const GeneId id = parse_gene_id(row[id_col], {line, id_col + 1});
    if (!seen.insert(id).second) {
      throw Error(ErrorCode::DuplicateGene, "gene " + std::to_string(id) + " appears twice",
                  Location{line, id_col + 1});
    }
    const std::size_t gene = ds.genes.size();
    ds.genes.push_back({id, row[name_col]});
    for (std::size_t k = 0; k < cluster_cols.size(); ++k) {
      const auto& cell = row[cluster_cols[k]];
      if (cell.empty()) continue;
      const double a = parse_unit_interval(cell, {line, cluster_cols[k] + 1});
      if (a != 0.0 && a != 1.0) hard = false;
      if (a > 0.0) ds.memberships.push_back({gene, k, a});
    }
  }

  ds.kind = hard ? ClusteringKind::Hard : ClusteringKind::Soft;
  if (hard) {
    // a_c = 1 / N_g^c, where N_g^c is the number of clusters the gene belongs to.
    std::vector<std::size_t> per_gene(ds.genes.size(), 0);
    for (const auto& m : ds.memberships) ++per_gene[m.gene];
    for (auto& m : ds.memberships) m.association = 1.0 / static_cast<double>(per_gene[m.gene]);
  }
  return ds;
}

InteractionDataset parse_interaction_table(std::string_view content) {
  const Table t = read_table(content);
  const auto src_col = require_exact(t, "SourceGeneId");
  const auto dst_col = require_exact(t, "TargetGeneId");
  const auto score_col = require_exact(t, "score");

  InteractionDataset ds;
  ds.rows = t.cells.size();
  std::map<std::pair<GeneId, GeneId>, std::size_t> index;
  for (std::size_t r = 0; r < t.cells.size(); ++r) {
    const auto& row = t.cells[r];
    const auto line = t.rows[r];
    InteractionEdge e{parse_gene_id(row[src_col], {line, src_col + 1}),
                      parse_gene_id(row[dst_col], {line, dst_col + 1}),
                      parse_unit_interval(row[score_col], {line, score_col + 1})};
    const auto key = std::minmax(e.source, e.target);
    auto [it, inserted] = index.try_emplace(key, ds.edges.size());
    if (inserted) {
      ds.edges.push_back(e);
    } else {
      auto& kept = ds.edges[it->second];
      kept.score = std::max(kept.score, e.score);
    }
  }
  return ds;
}

DiseaseDataset parse_disease_table(std::string_view content) {
  const Table t = read_table(content);
  const auto gene_col = require_caseless(t, "Genes");
  const auto disease_col = require_caseless(t, "Disease/Trait");
  const auto p_col = require_caseless(t, "p-Value");

  DiseaseDataset ds;
  ds.records.reserve(t.cells.size());
  for (std::size_t r = 0; r < t.cells.size(); ++r) {
    const auto& row = t.cells[r];
    const auto line = t.rows[r];
    if (row[disease_col].empty()) {
      throw Error(ErrorCode::MissingValue, "empty Disease/Trait", Location{line, disease_col + 1});
    }
    if (row[gene_col].empty()) {
      throw Error(ErrorCode::MissingValue, "empty Genes", Location{line, gene_col + 1});
    }
    const Location ploc{line, p_col + 1};
    const double p = parse_real(row[p_col], ploc);
    if (!(p > 0.0 && p <= 1.0)) {
      throw Error(ErrorCode::BadNumber, "p-value " + row[p_col] + " outside (0,1]", ploc);
    }
    ds.records.push_back({row[disease_col], row[gene_col], p});
  }
  return ds;
}

std::string serialize_cluster_table(const ClusterDataset& ds) {
  std::string out = "geneEntrezId,geneName";
  for (const auto& c : ds.clusters) out += "," + quote_csv(c);
  out += '\n';
  std::vector<std::vector<double>> matrix(ds.genes.size(),
                                          std::vector<double>(ds.clusters.size(), 0.0));
  for (const auto& m : ds.memberships) {
    matrix[m.gene][m.cluster] = ds.kind == ClusteringKind::Hard ? 1.0 : m.association;
  }
  for (std::size_t g = 0; g < ds.genes.size(); ++g) {
    out += std::to_string(ds.genes[g].id) + "," + quote_csv(ds.genes[g].name);
    for (double v : matrix[g]) out += "," + format_real(v);
    out += '\n';
  }
  return out;
}

std::string serialize_interaction_table(const InteractionDataset& ds) {
  std::string out = "SourceGeneId,TargetGeneId,score\n";
  for (const auto& e : ds.edges) {
    out += std::to_string(e.source) + "," + std::to_string(e.target) + "," +
           format_real(e.score) + "\n";
  }
  return out;
}

std::string serialize_disease_table(const DiseaseDataset& ds) {
  std::string out = "Disease/Trait,Genes,p-Value\n";
  for (const auto& r : ds.records) {
    out += quote_csv(r.disease) + "," + quote_csv(r.gene_name) + "," + format_real(r.p_value) +
           "\n";
  }
  return out;
}

}  // namespace genevis
