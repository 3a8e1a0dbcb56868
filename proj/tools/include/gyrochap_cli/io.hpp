#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include <gyrochap/so_n.hpp>

namespace gyrochap::cli {

/// Writes to a temporary file next to `path` and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);

/// Row-major CSV with a header row; values printed with 17 significant digits.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}
  void add(const std::vector<double>& row);
  std::string str() const;
  const std::vector<std::string>& columns() const { return columns_; }

 private:
  std::vector<std::string> columns_;
  std::string body_;
};

/// "prefix_1", …, "prefix_n"
std::vector<std::string> indexed(const std::string& prefix, int n);

/// Worker count: GYROCHAP_THREADS if set and positive, else the hardware
/// concurrency, never more than `jobs`.
int worker_count(int jobs);

}  // namespace gyrochap::cli
