#include "taut/database.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <sstream>

#include "taut/json_io.hpp"

namespace taut {

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return out.str();
}

namespace {

Json record_body(const RelationRecord& r) {
  Json j;
  j["genus"] = r.g;
  j["markings"] = r.n;
  j["monomial"] = r.monomial;
  j["expression"] = expression_to_json(r.expression);
  return j;
}

std::string record_key(const RelationRecord& r) { return monomial_key(r.g, r.n, parse_monomial(r.monomial, r.n)); }

}  // namespace

RelationDatabase::RelationDatabase(std::string path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in) return;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::string where = path_ + ":" + std::to_string(lineno);
    Json j;
    try {
      j = Json::parse(line);
    } catch (const nlohmann::json::exception&) {
      throw IntegrityError(where + ": unparsable record");
    }
    if (!j.is_object() || !j.contains("sha256") || !j.contains("record") || !j.at("sha256").is_string())
      throw IntegrityError(where + ": record lacks a checksum");
    if (sha256_hex(j.at("record").dump()) != j.at("sha256").get<std::string>())
      throw IntegrityError(where + ": checksum mismatch");
    RelationRecord r;
    try {
      const Json& b = j.at("record");
      r.g = b.at("genus").get<int>();
      r.n = b.at("markings").get<int>();
      r.monomial = b.at("monomial").get<std::string>();
      r.expression = expression_from_json(b.at("expression"));
    } catch (const std::exception& e) {
      throw IntegrityError(where + ": malformed record: " + e.what());
    }
    std::string key = record_key(r);
    auto it = records_.find(key);
    if (it != records_.end() && !(it->second.expression.value == r.expression.value))
      throw IntegrityError(where + ": conflicting records for " + key);
    records_.emplace(key, r);
  }
}

std::optional<RelationRecord> RelationDatabase::find(const std::string& key) const {
  auto it = records_.find(key);
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

void RelationDatabase::put(const RelationRecord& record) {
  std::string key = record_key(record);
  auto it = records_.find(key);
  if (it != records_.end()) {
    if (!(it->second.expression.value == record.expression.value))
      throw IntegrityError("recomputed value differs from stored record for " + key);
    return;
  }
  Json body = record_body(record);
  Json line;
  line["record"] = body;
  line["sha256"] = sha256_hex(body.dump());
  std::ofstream out(path_, std::ios::app);
  if (!out) throw std::runtime_error("cannot open database file " + path_);
  out << line.dump() << "\n";
  out.flush();
  records_.emplace(key, record);
}

std::vector<RelationRecord> RelationDatabase::records() const {
  std::vector<RelationRecord> out;
  for (const auto& [k, r] : records_) out.push_back(r);
  return out;
}

}  // namespace taut
