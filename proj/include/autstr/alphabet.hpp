#pragma once

#include <string>
#include <vector>

#include "autstr/errors.hpp"

namespace autstr {

/// Finite alphabet with explicit track structure.  An alphabet of arity n is
/// the n-fold product of base track alphabets; a letter is an n-tuple of base
/// letters and is addressed by a single index in mixed radix with track 0 the
/// most significant digit.  Base letters are non-empty alphanumeric tokens
/// (plus '_'), distinct within a track.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::vector<std::string>> tracks);

  static Alphabet binary();  // single track {0,1}
  static Alphabet single(std::vector<std::string> letters);
  /// Concatenates the track lists of the given alphabets.
  static Alphabet product(const std::vector<Alphabet>& parts, const Budget& budget = {});

  int arity() const { return static_cast<int>(tracks_.size()); }
  int size() const { return size_; }
  const std::vector<std::vector<std::string>>& tracks() const { return tracks_; }

  /// Letter index -> per-track component indices.
  std::vector<int> components(int letter) const;
  int component(int letter, int track) const;
  /// Per-track component indices -> letter index.
  int letter_of(const std::vector<int>& comps) const;

  /// Printable name: base letter for arity 1, "(a,b)" tuples otherwise.
  std::string letter_name(int letter) const;
  /// Inverse of letter_name; returns -1 if the name does not denote a letter.
  int find_letter(const std::string& name) const;

  Alphabet drop_track(int track) const;
  Alphabet insert_track(int position, std::vector<std::string> letters) const;

  bool operator==(const Alphabet& other) const { return tracks_ == other.tracks_; }
  bool operator!=(const Alphabet& other) const { return !(*this == other); }

 private:
  std::vector<std::vector<std::string>> tracks_;
  int size_ = 0;  // product of track sizes

  void recompute_size(const Budget& budget = {});
};

/// Letter-to-letter map used by relabeling: a total map from the letters of
/// `target` into the letters of the source automaton's alphabet.
struct LetterMap {
  Alphabet target;
  std::vector<int> to_source;  // size target.size()
};

/// The `copies`-fold product of one alphabet.
Alphabet power_alphabet(const Alphabet& base, int copies, const Budget& budget = {});

/// Map for reading an automaton over base^k on selected copies of
/// base^target_copies: copy j of the source is read from target position
/// positions[j].  Handles reordering, repetition and widening in one
/// relabeling step.
LetterMap selection_letter_map(const Alphabet& source, const Alphabet& base, int target_copies,
                               const std::vector<int>& positions, const Budget& budget = {});

}  // namespace autstr
