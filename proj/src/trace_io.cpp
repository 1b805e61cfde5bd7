#include "armlab/trace_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace armlab::io {

namespace {

void append_value(std::string& out, double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  out += buf;
}

double parse_double(const char*& cursor, const std::string& text, std::size_t line) {
  char* end = nullptr;
  const double x = std::strtod(cursor, &end);
  if (end == cursor)
    throw IoError("trace csv: malformed number at line " + std::to_string(line) +
                  " near '" + std::string(cursor, std::min<std::size_t>(8, text.size())) + "'");
  cursor = end;
  return x;
}

}  // namespace

std::string trace_csv(const SimRecord& rec) {
  std::string out;
  out.reserve(rec.size() * 16 * 20 + 64);
  out += kTraceHeader;
  out += '\n';
  for (std::size_t k = 0; k < rec.size(); ++k) {
    append_value(out, rec.t[k]);
    for (const auto* group : {&rec.position, &rec.desired, &rec.error, &rec.surface, &rec.control})
      for (const auto& column : *group) {
        out += ',';
        append_value(out, column[k]);
      }
    out += '\n';
  }
  return out;
}

SimRecord parse_trace_csv(const std::string& text) {
  const std::string header(kTraceHeader);
  if (text.compare(0, header.size(), header) != 0 || text.size() <= header.size() ||
      text[header.size()] != '\n')
    throw IoError("trace csv: unexpected header");

  SimRecord rec;
  const char* cursor = text.c_str() + header.size() + 1;
  std::size_t line = 2;
  while (*cursor != '\0') {
    rec.t.push_back(parse_double(cursor, text, line));
    for (auto* group : {&rec.position, &rec.desired, &rec.error, &rec.surface, &rec.control})
      for (auto& column : *group) {
        if (*cursor != ',') throw IoError("trace csv: expected ',' at line " + std::to_string(line));
        ++cursor;
        column.push_back(parse_double(cursor, text, line));
      }
    if (*cursor != '\n') throw IoError("trace csv: expected newline at line " + std::to_string(line));
    ++cursor;
    ++line;
  }
  for (auto& column : rec.velocity) column.assign(rec.t.size(), 0.0);
  return rec;
}

std::string metrics_json(const std::string& controller, const SimRecord& rec,
                         const metrics::RunMetrics& m) {
  nlohmann::ordered_json j;
  j["controller"] = controller;
  j["config_hash"] = rec.config_hash;
  j["seed"] = rec.seed;
  j["samples"] = rec.size();
  j["mse"] = {m.mse[0], m.mse[1], m.mse[2]};
  j["mse_pooled"] = m.mse_pooled;
  auto reach = nlohmann::ordered_json::array();
  for (const auto& r : m.reach_time)
    reach.push_back(r ? nlohmann::ordered_json(*r) : nlohmann::ordered_json(nullptr));
  j["reach_time"] = reach;
  j["steady_state_error"] = {m.steady_state_error[0], m.steady_state_error[1],
                             m.steady_state_error[2]};
  j["chattering_index"] = {m.chattering_index[0], m.chattering_index[1], m.chattering_index[2]};
  return j.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& bytes) {
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) {
    std::filesystem::create_directories(p.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + p.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(p, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed for " + path);
  return bytes;
}

}  // namespace armlab::io
