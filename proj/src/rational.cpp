#include "pepos/rational.hpp"

#include <cctype>

namespace pepos {

Rational parse_rational(const std::string& text) {
    if (text.empty())
        throw error("empty rational literal");
    for (char c : text) {
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/'))
            throw error("invalid rational literal: '" + text + "'");
    }
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos)
            return Rational(Int(text));
        Int num(text.substr(0, slash));
        Int den(text.substr(slash + 1));
        if (den == 0)
            throw error("zero denominator in rational literal: '" + text + "'");
        return Rational(num, den);
    } catch (const std::exception&) {
        throw error("invalid rational literal: '" + text + "'");
    }
}

std::string fraction_string(const Rational& value) {
    return numerator(value).str() + "/" + denominator(value).str();
}

std::string fraction_list_string(const std::vector<Rational>& values) {
    std::string out = "[";
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) out += ", ";
        out += fraction_string(values[i]);
    }
    return out + "]";
}

std::string LinPoly::str() const {
    if (is_constant())
        return fraction_string(constant);
    return fraction_string(constant) + " + " + fraction_string(slope) + " t";
}

} // namespace pepos
