#include "matr/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <vector>

namespace matr {

AdjacencyMatrix load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("load_edge_list: cannot open " + path);

  std::set<std::pair<long, long>> edges;
  long n_override = -1, max_index = -1;
  std::string line;
  long lineno = 0;
  bool warned_self_loop = false;

  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      const auto eq = line.find("n=");
      if (eq != std::string::npos) {
        try {
          n_override = std::stol(line.substr(eq + 2));
        } catch (...) {
          throw parse_error("load_edge_list: bad #n= header at line " +
                            std::to_string(lineno));
        }
      }
      continue;
    }
    std::istringstream ss(line);
    long u, v;
    if (!(ss >> u >> v) || u < 0 || v < 0) {
      std::string rest;
      throw parse_error("load_edge_list: malformed line " + std::to_string(lineno));
    }
    std::string trailing;
    if (ss >> trailing)
      throw parse_error("load_edge_list: malformed line " + std::to_string(lineno));
    max_index = std::max({max_index, u, v});
    if (u == v) {
      if (!warned_self_loop) {
        std::cerr << "load_edge_list: dropping self-loop(s), first at line "
                  << lineno << "\n";
        warned_self_loop = true;
      }
      continue;
    }
    edges.insert({std::min(u, v), std::max(u, v)});
  }

  const long n = n_override >= 0 ? n_override : max_index + 1;
  if (n < 1) throw parse_error("load_edge_list: no nodes in " + path);
  if (max_index >= n)
    throw parse_error("load_edge_list: node index exceeds #n= header");

  Matrix a = Matrix::Zero(n, n);
  for (const auto& [u, v] : edges) {
    a(u, v) = 1.0;
    a(v, u) = 1.0;
  }
  return AdjacencyMatrix(std::move(a));
}

namespace {

bool parse_row(const std::string& line, std::vector<double>& out) {
  out.clear();
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    try {
      size_t used = 0;
      const double v = std::stod(cell, &used);
      while (used < cell.size() &&
             (cell[used] == ' ' || cell[used] == '\r' || cell[used] == '\t'))
        ++used;
      if (used != cell.size()) return false;
      out.push_back(v);
    } catch (...) {
      return false;
    }
  }
  return !out.empty();
}

}  // namespace

Matrix load_points_csv(const std::string& path, bool standardize) {
  std::ifstream in(path);
  if (!in) throw parse_error("load_points_csv: cannot open " + path);

  std::vector<std::vector<double>> rows;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> row;
    if (!parse_row(line, row)) {
      if (lineno == 1 && rows.empty()) continue;  // header row
      throw parse_error("load_points_csv: non-numeric cell at line " +
                        std::to_string(lineno));
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw parse_error("load_points_csv: ragged row at line " +
                        std::to_string(lineno));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw parse_error("load_points_csv: no data in " + path);

  Matrix y(rows.size(), rows.front().size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows.front().size(); ++j) y(i, j) = rows[i][j];

  if (standardize) {
    for (Index j = 0; j < y.cols(); ++j) {
      const double mean = y.col(j).mean();
      const double var = (y.col(j).array() - mean).square().mean();
      if (var > 1e-24)
        y.col(j) = (y.col(j).array() - mean) / std::sqrt(var);
      else
        y.col(j).setZero();  // constant column
    }
  }
  return y;
}

}  // namespace matr
