#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include "corpus/message.hpp"

namespace rumortrack::corpus {

struct Rejection {
    std::size_t line = 0;  // 1-based line number in the source
    std::string id;        // empty when the record had no readable id
    std::string reason;
};

struct SchemaConfig {
    // Canonical field name -> key used by the source records. Unlisted fields
    // use their canonical name (see docs/schema.md).
    std::map<std::string, std::string> field_names;
};

struct IngestResult {
    std::vector<Message> accepted;
    std::vector<Rejection> rejected;
};

// Reads line-delimited JSON records. Blank lines are not records. Throws
// Error(Io) if the stream goes bad before end of input.
IngestResult ingest(std::istream& source, const SchemaConfig& schema = {});
IngestResult ingest_file(const std::filesystem::path& path, const SchemaConfig& schema = {});

// Corpus snapshot: one canonical JSON record per line. Reading a snapshot
// back and writing it again is byte-identical.
std::string message_to_json_line(const Message& m);
void write_snapshot(const std::filesystem::path& path, const std::vector<Message>& messages);
std::vector<Message> read_snapshot(const std::filesystem::path& path);

std::string rejections_to_tsv(const std::vector<Rejection>& rejected);

}  // namespace rumortrack::corpus
