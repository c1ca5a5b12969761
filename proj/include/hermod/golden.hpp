#pragma once

// Golden-table files: "# ..." comments, records "m a b n ndet v1 [v2 ...] [erratum]",
// and a trailing "checksum <fnv1a-64 hex>" over the record lines.

#include "hermod/theta.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#ifndef HERMOD_DATA_DIR
#define HERMOD_DATA_DIR "data"
#endif

namespace hermod {

struct GoldenRow {
  HermIndex index;
  long ndet = 0;
  std::vector<Integer> values;
  bool erratum = false;
};

struct GoldenTable {
  std::vector<GoldenRow> rows;
  bool checksum_present = false;
  bool checksum_ok = false;
};

inline GoldenTable read_golden(std::istream& is, std::size_t columns) {
  GoldenTable t;
  std::string line, body;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string first;
    ls >> first;
    if (first == "checksum") {
      std::string hex;
      ls >> hex;
      std::ostringstream want;
      want << std::hex << detail::fnv1a(body);
      t.checksum_present = true;
      t.checksum_ok = want.str() == hex;
      continue;
    }
    body += line + "\n";
    std::istringstream rs(line);
    long m, a, b, n;
    GoldenRow row;
    if (!(rs >> m >> a >> b >> n >> row.ndet)) throw std::runtime_error("golden table: bad row '" + line + "'");
    row.index = HermIndex::gaussian(m, a, b, n);
    for (std::size_t c = 0; c < columns; ++c) {
      std::string v;
      if (!(rs >> v)) throw std::runtime_error("golden table: missing value in '" + line + "'");
      row.values.emplace_back(v);
    }
    std::string flag;
    if (rs >> flag) {
      if (flag != "erratum") throw std::runtime_error("golden table: unknown flag '" + flag + "'");
      row.erratum = true;
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline GoldenTable read_golden_file(const std::string& path, std::size_t columns) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open golden table " + path);
  return read_golden(in, columns);
}

inline std::string default_data_dir() { return HERMOD_DATA_DIR; }

}  // namespace hermod
