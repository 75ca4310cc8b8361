#include "spfff/design_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace spfff {

std::string format_double(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string default_metadata_path(const std::string& csv_path) {
  return csv_path + ".meta.json";
}

void write_design(const Design& design, const std::string& csv_path,
                  const std::string& metadata_path) {
  validate_design(design);
  std::ofstream csv(csv_path);
  if (!csv) throw IoError("cannot open " + csv_path + " for writing");
  csv << "run,wp_id";
  for (int j = 0; j < design.d(); ++j) csv << ",x" << (j + 1);
  csv << "\n";
  for (int i = 0; i < design.n(); ++i) {
    csv << (i + 1) << ',' << design.wp_id[static_cast<std::size_t>(i)];
    for (int j = 0; j < design.d(); ++j) csv << ',' << format_double(design.points(i, j));
    csv << "\n";
  }
  if (!csv.good()) throw IoError("write failed for " + csv_path);
  csv.close();

  nlohmann::json meta;
  meta["d_wp"] = design.d_wp();
  meta["d_sp"] = design.d() - design.d_wp();
  meta["scaled"] = design.scaled;
  meta["seed"] = design.seed;
  const std::string meta_path =
      metadata_path.empty() ? default_metadata_path(csv_path) : metadata_path;
  std::ofstream out(meta_path);
  if (!out) throw IoError("cannot open " + meta_path + " for writing");
  out << meta.dump() << "\n";
  if (!out.good()) throw IoError("write failed for " + meta_path);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_coordinate(const std::string& text, int row, int col) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    std::ostringstream msg;
    msg << "row " << row << ", column x" << col << ": cannot parse coordinate '"
        << text << "'";
    throw DesignError(msg.str());
  }
  return value;
}

long parse_integer(const std::string& text, int row, const char* what) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const long value = std::strtol(begin, &end, 10);
  if (end == begin || *end != '\0') {
    std::ostringstream msg;
    msg << "row " << row << ": cannot parse " << what << " '" << text << "'";
    throw DesignError(msg.str());
  }
  return value;
}

}  // namespace

Design ingest_external_design(const std::string& csv_path,
                              const std::string& metadata_path) {
  const std::string meta_path =
      metadata_path.empty() ? default_metadata_path(csv_path) : metadata_path;
  std::ifstream meta_in(meta_path);
  if (!meta_in) throw IoError("cannot open metadata sidecar " + meta_path);
  nlohmann::json meta;
  try {
    meta_in >> meta;
  } catch (const nlohmann::json::exception& e) {
    throw DesignError(meta_path + ": invalid JSON metadata: " + e.what());
  }
  if (!meta.contains("d_wp") || !meta.contains("d_sp")) {
    throw DesignError(meta_path + ": metadata must declare d_wp and d_sp");
  }
  const int d_wp = meta["d_wp"].get<int>();
  const int d_sp = meta["d_sp"].get<int>();
  if (d_wp < 0 || d_sp < 0 || d_wp + d_sp < 1) {
    throw DesignError(meta_path + ": invalid factor counts in metadata");
  }
  const int d = d_wp + d_sp;

  std::ifstream csv(csv_path);
  if (!csv) throw IoError("cannot open " + csv_path);
  std::string line;
  if (!std::getline(csv, line)) throw DesignError(csv_path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  {
    std::ostringstream expect;
    expect << "run,wp_id";
    for (int j = 0; j < d; ++j) expect << ",x" << (j + 1);
    if (line != expect.str()) {
      throw DesignError(csv_path + ": header '" + line + "' does not match '" +
                        expect.str() + "'");
    }
  }

  std::vector<std::vector<double>> rows;
  std::vector<int> raw_wp;
  int row_number = 1;
  while (std::getline(csv, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ++row_number;
    const std::vector<std::string> fields = split_csv_line(line);
    if (static_cast<int>(fields.size()) != d + 2) {
      std::ostringstream msg;
      msg << "row " << (row_number - 1) << ": expected " << (d + 2)
          << " fields, found " << fields.size();
      throw DesignError(msg.str());
    }
    const int data_row = row_number - 1;  // 1-based data row
    parse_integer(fields[0], data_row, "run index");
    raw_wp.push_back(static_cast<int>(parse_integer(fields[1], data_row, "wp_id")));
    std::vector<double> coords(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
      const double v = parse_coordinate(fields[static_cast<std::size_t>(j + 2)], data_row, j + 1);
      if (!(v >= -1.0 && v <= 1.0)) {
        std::ostringstream msg;
        msg << "row " << data_row << ", column x" << (j + 1) << ": coordinate "
            << format_double(v) << " outside [-1,1]";
        throw DesignError(msg.str());
      }
      coords[static_cast<std::size_t>(j)] = v;
    }
    rows.push_back(std::move(coords));
  }
  const int n = static_cast<int>(rows.size());
  if (n < 1) throw DesignError(csv_path + ": no data rows");

  // Split-plot constancy against the original labels, so diagnostics name
  // the label as written in the file.
  std::map<int, int> anchor_row;
  for (int i = 0; i < n; ++i) {
    const int label = raw_wp[static_cast<std::size_t>(i)];
    auto [it, inserted] = anchor_row.try_emplace(label, i);
    if (inserted) continue;
    for (int j = 0; j < d_wp; ++j) {
      const double a = rows[static_cast<std::size_t>(it->second)][static_cast<std::size_t>(j)];
      const double b = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (a != b) {
        std::ostringstream msg;
        msg << "rows " << (it->second + 1) << " and " << (i + 1)
            << " differ in whole-plot column x" << (j + 1) << " within wp_id "
            << label;
        throw DesignError(msg.str());
      }
    }
  }

  Design design;
  design.points.resize(n, d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) {
      design.points(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  // Renumber labels into the canonical first-appearance form.
  std::map<int, int> relabel;
  design.wp_id.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int label = raw_wp[static_cast<std::size_t>(i)];
    auto [it, inserted] = relabel.try_emplace(label, static_cast<int>(relabel.size()) + 1);
    design.wp_id[static_cast<std::size_t>(i)] = it->second;
  }
  design.column_roles = make_column_roles(d, d_wp);
  design.scaled = meta.value("scaled", false);
  design.seed = meta.value("seed", static_cast<std::uint64_t>(0));
  validate_design(design);
  return design;
}

}  // namespace spfff
