#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "coherex/error.h"
#include "coherex/parallel.h"
#include "coherex/text.h"

namespace fs = std::filesystem;

namespace coherex {
namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw DataError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw DataError("error while reading " + p.string());
  return ss.str();
}

}  // namespace

std::vector<std::string> parse_keyphrase_lines(std::string_view content) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= content.size()) {
    std::size_t nl = content.find('\n', pos);
    if (nl == std::string_view::npos) nl = content.size();
    std::string_view line = content.substr(pos, nl - pos);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.remove_suffix(1);
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    if (!line.empty()) out.emplace_back(line);
    pos = nl + 1;
  }
  return out;
}

Document load_document(const fs::path& txt_path) {
  Document d = Document::FromText(txt_path.stem().string(), read_file(txt_path));
  fs::path key = txt_path;
  key.replace_extension(".key");
  std::error_code ec;
  if (fs::exists(key, ec)) d.author_keyphrases = parse_keyphrase_lines(read_file(key));
  return d;
}

Corpus load_corpus(const fs::path& dir, unsigned jobs) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw DataError("corpus directory not found: " + dir.string());
  std::map<std::string, fs::path> bodies;
  std::set<std::string> sidecars;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto ext = entry.path().extension();
    if (ext == ".txt") {
      bodies.emplace(entry.path().stem().string(), entry.path());
    } else if (ext == ".key") {
      sidecars.insert(entry.path().stem().string());
    }
  }
  for (const auto& s : sidecars) {
    if (!bodies.count(s)) throw DataError("keyphrase file " + (dir / (s + ".key")).string() + " has no matching .txt");
  }
  Corpus corpus;
  corpus.name = dir.filename().empty() ? dir.parent_path().filename().string() : dir.filename().string();
  std::vector<fs::path> paths;
  for (const auto& [id, p] : bodies) paths.push_back(p);
  corpus.documents.resize(paths.size());
  parallel_for(paths.size(), jobs, [&](std::size_t i) { corpus.documents[i] = load_document(paths[i]); });
  return corpus;
}

}  // namespace coherex
