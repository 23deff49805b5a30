// Append-only JSONL store of boundary expressions. Each line carries the
// SHA-256 of its own content and is verified when the file is opened.
#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "taut/relations.hpp"

namespace taut {

class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string sha256_hex(const std::string& data);

class RelationDatabase {
 public:
  // Loads and verifies existing records; creates the file on first write.
  explicit RelationDatabase(std::string path);

  const std::string& path() const { return path_; }
  std::size_t size() const { return records_.size(); }

  std::optional<RelationRecord> find(const std::string& key) const;

  // Appends the record unless its key is present; a present key must carry
  // the same value, otherwise IntegrityError.
  void put(const RelationRecord& record);

  std::vector<RelationRecord> records() const;

 private:
  std::string path_;
  std::map<std::string, RelationRecord> records_;
};

}  // namespace taut
