#pragma once

#include <string>
#include <string_view>

namespace coshare::corpus {

/// Removes direct quotations: every span between paired double quotes
/// (straight ", typographic “ ” „, guillemets « ») is deleted together with
/// its marks. An opening mark without a partner deletes through the end of
/// its sentence (the terminator is kept). Text without quote marks is
/// returned unchanged; the result is never longer than the input.
std::string strip_direct_quotes(std::string_view text);

}  // namespace coshare::corpus
