#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "coherex/error.h"
#include "coherex/text.h"

namespace coherex {
namespace {

// SMART-derived English stopword list.
constexpr const char* kDefaultStopwords =
    "a about above according across after afterwards again against all almost alone along already "
    "also although always am among amongst an and another any anybody anyhow anyone anything anyway "
    "anyways anywhere apart are around as aside at away be became because become becomes becoming "
    "been before beforehand behind being below beside besides best better between beyond both brief "
    "but by can cannot cant certain certainly clearly co could did different do does doing done down "
    "downwards during each eg eight either else elsewhere enough especially et etc even ever every "
    "everybody everyone everything everywhere ex exactly example except far few fifth first five "
    "followed following follows for former formerly forth four from further furthermore get gets "
    "getting given gives go goes going gone got gotten had happens hardly has have having he hello "
    "hence her here hereafter hereby herein hereupon hers herself hi him himself his hither how "
    "howbeit however i ie if in inasmuch inc indeed instead into inward is it its itself just keep "
    "keeps kept know known knows last lately later latter latterly least less lest let like liked "
    "likely little ltd mainly many may maybe me mean meanwhile merely might more moreover most mostly "
    "much must my myself namely nd near nearly necessary need needs neither never nevertheless new "
    "next nine no nobody non none noone nor normally not nothing novel now nowhere obviously of off "
    "often oh ok okay old on once one ones only onto or other others otherwise ought our ours "
    "ourselves out outside over overall own particular particularly per perhaps placed please plus "
    "possible presumably probably provides que quite qv rather rd re really reasonably regarding "
    "regardless regards relatively respectively right said same saw say saying says second secondly "
    "see seeing seem seemed seeming seems seen self selves sensible sent serious seriously seven "
    "several shall she should since six so some somebody somehow someone something sometime "
    "sometimes somewhat somewhere soon sorry specified specify specifying still sub such sup sure "
    "take taken tell tends th than thank thanks thanx that thats the their theirs them themselves "
    "then thence there thereafter thereby therefore therein theres thereupon these they think third "
    "this thorough thoroughly those though three through throughout thru thus to together too took "
    "toward towards tried tries truly try trying twice two un under unfortunately unless unlikely "
    "until unto up upon us use used useful uses using usually value various very via viz vs want "
    "wants was way we welcome well went were what whatever when whence whenever where whereafter "
    "whereas whereby wherein whereupon wherever whether which while whither who whoever whole whom "
    "whose why will willing wish with within without wonder would yes yet you your yours yourself "
    "yourselves zero";

std::vector<std::string> split_words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

}  // namespace

StopwordList::StopwordList(const std::vector<std::string>& words, std::string id) : id_(std::move(id)) {
  for (const auto& w : words) {
    if (!w.empty()) words_.insert(to_lower(w));
  }
}

const StopwordList& StopwordList::Default() {
  static const StopwordList list(split_words(kDefaultStopwords), "smart");
  return list;
}

StopwordList StopwordList::FromFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read stopword list " + path.string());
  std::vector<std::string> words;
  for (std::string line; std::getline(in, line);) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    words.push_back(line.substr(start));
  }
  return StopwordList(words, path.string());
}

std::vector<std::string> StopwordList::sorted_words() const {
  std::vector<std::string> out(words_.begin(), words_.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool StopwordList::contains(std::string_view word) const { return words_.count(to_lower(word)) != 0; }

}  // namespace coherex
