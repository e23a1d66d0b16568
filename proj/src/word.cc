#include <ufact/word.hh>
#include <ufact/errors.hh>

namespace ufact
{
  std::vector<std::string>
  utf8_scalars(std::string_view text)
  {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < text.size())
      {
        auto lead = static_cast<unsigned char>(text[i]);
        std::size_t len;
        if (lead < 0x80)
          len = 1;
        else if ((lead >> 5) == 0x6)
          len = 2;
        else if ((lead >> 4) == 0xe)
          len = 3;
        else if ((lead >> 3) == 0x1e)
          len = 4;
        else
          throw input_error("malformed UTF-8 input");
        if (i + len > text.size())
          throw input_error("truncated UTF-8 sequence");
        for (std::size_t k = 1; k < len; ++k)
          if ((static_cast<unsigned char>(text[i + k]) >> 6) != 0x2)
            throw input_error("malformed UTF-8 continuation byte");
        out.emplace_back(text.substr(i, len));
        i += len;
      }
    return out;
  }

  word
  parse_word(std::string_view text, const letter_lookup& lookup)
  {
    word w;
    for (const auto& s : utf8_scalars(text))
      w.push_back(lookup(s));
    return w;
  }

  up_word
  parse_up_word(std::string_view text, const letter_lookup& lookup)
  {
    auto open = text.find('(');
    auto close = text.rfind(")^w");
    if (open == std::string_view::npos || close == std::string_view::npos
        || close < open || close + 3 != text.size())
      throw input_error("expected an ultimately periodic word u(v)^w, got '"
                        + std::string(text) + "'");
    up_word w;
    w.prefix = parse_word(text.substr(0, open), lookup);
    w.period = parse_word(text.substr(open + 1, close - open - 1), lookup);
    if (w.period.empty())
      throw input_error("the period of an ultimately periodic word is empty");
    return w;
  }

  std::string
  format_word(const word& w, const std::vector<std::string>& alphabet)
  {
    std::string out;
    for (letter a : w)
      out += alphabet.at(a);
    return out;
  }

  std::string
  format_up_word(const up_word& w, const std::vector<std::string>& alphabet)
  {
    return format_word(w.prefix, alphabet) + "("
      + format_word(w.period, alphabet) + ")^w";
  }

  void
  for_each_word(int alphabet_size, std::size_t min_len, std::size_t max_len,
                const std::function<void(const word&)>& f)
  {
    for (std::size_t len = min_len; len <= max_len; ++len)
      {
        word w(len, 0);
        for (;;)
          {
            f(w);
            // odometer increment, last letter fastest
            std::size_t i = len;
            while (i > 0 && w[i - 1] == alphabet_size - 1)
              w[--i] = 0;
            if (i == 0)
              break;
            ++w[i - 1];
          }
        if (alphabet_size == 0)
          break;
      }
  }

  std::vector<up_word>
  all_up_words(int alphabet_size, std::size_t max_prefix,
               std::size_t max_period)
  {
    std::vector<word> prefixes, periods;
    for_each_word(alphabet_size, 0, max_prefix,
                  [&](const word& w) { prefixes.push_back(w); });
    for_each_word(alphabet_size, 1, max_period,
                  [&](const word& w) { periods.push_back(w); });
    std::vector<up_word> out;
    out.reserve(prefixes.size() * periods.size());
    for (const auto& u : prefixes)
      for (const auto& v : periods)
        out.push_back({u, v});
    return out;
  }
}
