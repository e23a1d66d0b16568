#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ufact
{
  /// Base class of every error raised by the library.
  class error : public std::runtime_error
  {
  public:
    using std::runtime_error::runtime_error;
  };

  /// Malformed input: bad JSON, unknown names, shape mismatches.
  class input_error : public error
  {
  public:
    using error::error;
  };

  class out_of_range_entry : public input_error
  {
  public:
    out_of_range_entry(std::size_t row, std::size_t col, long long value)
      : input_error("table entry (" + std::to_string(row) + "," +
                    std::to_string(col) + ") = " + std::to_string(value) +
                    " is out of range"),
        row(row), col(col), value(value)
    {
    }
    std::size_t row, col;
    long long value;
  };

  class non_associative : public input_error
  {
  public:
    non_associative(int i, int j, int k, const std::string& detail)
      : input_error("product is not associative: " + detail), i(i), j(j), k(k)
    {
    }
    int i, j, k;
  };

  class unknown_letter : public input_error
  {
  public:
    explicit unknown_letter(const std::string& letter)
      : input_error("unknown letter '" + letter + "'"), letter(letter)
    {
    }
    std::string letter;
  };

  class degenerate_split : public error
  {
  public:
    using error::error;
  };

  class not_a_group : public error
  {
  public:
    using error::error;
  };

  class multiple_images : public error
  {
  public:
    using error::error;
  };

  class case_inapplicable : public error
  {
  public:
    using error::error;
  };

  class not_good : public error
  {
  public:
    using error::error;
  };

  class not_reduced : public error
  {
  public:
    using error::error;
  };

  class no_accepting_run : public error
  {
  public:
    using error::error;
  };

  class not_ramsey : public error
  {
  public:
    using error::error;
  };

  class no_parse : public error
  {
  public:
    using error::error;
  };

  class ambiguous_parse : public error
  {
  public:
    explicit ambiguous_parse(std::uint64_t count)
      : error("expression has " + std::to_string(count) +
              " parses for the word"),
        count(count)
    {
    }
    std::uint64_t count;
  };

  class missing_build_report : public error
  {
  public:
    using error::error;
  };

  class size_overflow : public error
  {
  public:
    using error::error;
  };
}
