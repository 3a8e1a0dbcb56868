#include "gyrochap_cli/io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <thread>

namespace gyrochap::cli {

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  write_atomic(path, j.dump(2) + "\n");
}

void CsvTable::add(const std::vector<double>& row) {
  char buf[40];
  for (std::size_t i = 0; i < row.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", row[i]);
    if (i) body_ += ',';
    body_ += buf;
  }
  body_ += '\n';
}

std::string CsvTable::str() const {
  std::string head;
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (i) head += ',';
    head += columns_[i];
  }
  return head + '\n' + body_;
}

std::vector<std::string> indexed(const std::string& prefix, int n) {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back(prefix + "_" + std::to_string(i));
  return out;
}

int worker_count(int jobs) {
  int w = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("GYROCHAP_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) w = v;
  }
  return std::max(1, std::min(w, jobs));
}

}  // namespace gyrochap::cli
