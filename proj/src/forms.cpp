#include "cubic/forms.hpp"

#include <sstream>

namespace cubic {

Form parse_form(const std::string& text) {
  std::array<Int, 4> v{};
  std::stringstream ss(text);
  std::string item;
  size_t n = 0;
  while (std::getline(ss, item, ',')) {
    if (n >= 4) throw DomainError("form needs exactly 4 coefficients: " + text);
    size_t used = 0;
    try {
      v[n] = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw DomainError("bad coefficient '" + item + "' in " + text);
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size()) throw DomainError("bad coefficient '" + item + "' in " + text);
    ++n;
  }
  if (n != 4) throw DomainError("form needs exactly 4 coefficients: " + text);
  return {v[0], v[1], v[2], v[3]};
}

}  // namespace cubic
