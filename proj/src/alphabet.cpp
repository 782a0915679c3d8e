#include "autstr/alphabet.hpp"

#include <set>

namespace autstr {

namespace {
bool valid_token(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    bool ok = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
    if (!ok) return false;
  }
  return true;
}
}  // namespace

Alphabet::Alphabet(std::vector<std::vector<std::string>> tracks) : tracks_(std::move(tracks)) {
  if (tracks_.empty()) throw InputError("alphabet needs at least one track");
  for (const auto& t : tracks_) {
    if (t.empty()) throw InputError("alphabet track must be non-empty");
    std::set<std::string> seen;
    for (const auto& s : t) {
      if (!valid_token(s)) throw InputError("bad letter token '" + s + "'");
      if (!seen.insert(s).second) throw InputError("duplicate letter '" + s + "' in track");
    }
  }
  recompute_size();
}

Alphabet Alphabet::binary() { return single({"0", "1"}); }

Alphabet Alphabet::single(std::vector<std::string> letters) {
  return Alphabet(std::vector<std::vector<std::string>>{std::move(letters)});
}

Alphabet Alphabet::product(const std::vector<Alphabet>& parts, const Budget& budget) {
  if (parts.empty()) throw InputError("alphabet product needs at least one factor");
  std::vector<std::vector<std::string>> tracks;
  for (const auto& p : parts)
    for (const auto& t : p.tracks_) tracks.push_back(t);
  Alphabet out;
  out.tracks_ = std::move(tracks);
  out.recompute_size(budget);
  return out;
}

void Alphabet::recompute_size(const Budget& budget) {
  std::size_t n = 1;
  for (const auto& t : tracks_) {
    n *= t.size();
    if (n > budget.max_letters)
      throw CapacityError("alphabet letter count exceeds budget (" +
                          std::to_string(budget.max_letters) + ")");
  }
  size_ = static_cast<int>(n);
}

std::vector<int> Alphabet::components(int letter) const {
  if (letter < 0 || letter >= size_) throw InputError("letter index out of range");
  std::vector<int> comps(tracks_.size());
  for (int i = arity() - 1; i >= 0; --i) {
    int m = static_cast<int>(tracks_[i].size());
    comps[i] = letter % m;
    letter /= m;
  }
  return comps;
}

int Alphabet::component(int letter, int track) const {
  if (track < 0 || track >= arity()) throw InputError("track index out of range");
  return components(letter)[track];
}

int Alphabet::letter_of(const std::vector<int>& comps) const {
  if (static_cast<int>(comps.size()) != arity()) throw InputError("component arity mismatch");
  int letter = 0;
  for (int i = 0; i < arity(); ++i) {
    int m = static_cast<int>(tracks_[i].size());
    if (comps[i] < 0 || comps[i] >= m) throw InputError("component index out of range");
    letter = letter * m + comps[i];
  }
  return letter;
}

std::string Alphabet::letter_name(int letter) const {
  std::vector<int> comps = components(letter);
  if (arity() == 1) return tracks_[0][comps[0]];
  std::string out = "(";
  for (int i = 0; i < arity(); ++i) {
    if (i) out += ",";
    out += tracks_[i][comps[i]];
  }
  out += ")";
  return out;
}

int Alphabet::find_letter(const std::string& name) const {
  for (int i = 0; i < size_; ++i)
    if (letter_name(i) == name) return i;
  return -1;
}

Alphabet Alphabet::drop_track(int track) const {
  if (arity() < 2) throw InputError("cannot drop the only track");
  if (track < 0 || track >= arity()) throw InputError("track index out of range");
  std::vector<std::vector<std::string>> tracks = tracks_;
  tracks.erase(tracks.begin() + track);
  return Alphabet(std::move(tracks));
}

Alphabet Alphabet::insert_track(int position, std::vector<std::string> letters) const {
  if (position < 0 || position > arity()) throw InputError("track position out of range");
  std::vector<std::vector<std::string>> tracks = tracks_;
  tracks.insert(tracks.begin() + position, std::move(letters));
  return Alphabet(std::move(tracks));
}

Alphabet power_alphabet(const Alphabet& base, int copies, const Budget& budget) {
  if (copies < 1) throw InputError("alphabet power needs at least one copy");
  return Alphabet::product(std::vector<Alphabet>(copies, base), budget);
}

LetterMap selection_letter_map(const Alphabet& source, const Alphabet& base, int target_copies,
                               const std::vector<int>& positions, const Budget& budget) {
  if (source != power_alphabet(base, static_cast<int>(positions.size()), budget))
    throw InputError("selection source is not the matching power of the base");
  LetterMap m;
  m.target = power_alphabet(base, target_copies, budget);
  int b = base.arity();
  for (int pos : positions)
    if (pos < 0 || pos >= target_copies) throw InputError("selection position out of range");
  for (int t = 0; t < m.target.size(); ++t) {
    std::vector<int> comps = m.target.components(t);
    std::vector<int> picked;
    for (int pos : positions)
      for (int j = 0; j < b; ++j) picked.push_back(comps[pos * b + j]);
    m.to_source.push_back(source.letter_of(picked));
  }
  return m;
}

}  // namespace autstr
