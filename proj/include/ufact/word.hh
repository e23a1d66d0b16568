#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace ufact
{
  using letter = int;
  using word = std::vector<letter>;

  /// The ultimately periodic word prefix · period^ω.
  struct up_word
  {
    word prefix;
    word period;

    std::size_t stem_length() const { return prefix.size(); }
    std::size_t cycle_length() const { return period.size(); }

    /// Letter at absolute position i (0-based) of the infinite word.
    letter at(std::size_t i) const
    {
      return i < prefix.size() ? prefix[i]
                               : period[(i - prefix.size()) % period.size()];
    }

    /// Position after i in the folded position graph of size
    /// |prefix| + |period|.
    std::size_t next_position(std::size_t i) const
    {
      return i + 1 < prefix.size() + period.size() ? i + 1 : prefix.size();
    }

    bool operator==(const up_word&) const = default;
  };

  /// Splits a UTF-8 string into its Unicode scalar values, each returned as
  /// its own UTF-8 encoded string.  Throws input_error on malformed input.
  std::vector<std::string> utf8_scalars(std::string_view text);

  /// Maps letter names to indices; throws unknown_letter.
  using letter_lookup = std::function<letter(const std::string&)>;

  word parse_word(std::string_view text, const letter_lookup& lookup);

  /// Parses `u(v)^w`.  The prefix u may be empty; v may not.
  up_word parse_up_word(std::string_view text, const letter_lookup& lookup);

  std::string format_word(const word& w,
                          const std::vector<std::string>& alphabet);
  std::string format_up_word(const up_word& w,
                             const std::vector<std::string>& alphabet);

  /// Calls f on every word over {0..alphabet_size-1} with length in
  /// [min_len, max_len], shortest first, then lexicographically.
  void for_each_word(int alphabet_size, std::size_t min_len,
                     std::size_t max_len,
                     const std::function<void(const word&)>& f);

  /// Every up_word with |prefix| <= max_prefix and 1 <= |period| <= max_period.
  std::vector<up_word> all_up_words(int alphabet_size, std::size_t max_prefix,
                                    std::size_t max_period);
}
