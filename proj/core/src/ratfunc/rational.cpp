#include "paramsynth/ratfunc/rational.h"

#include "paramsynth/errors.h"

#include <cctype>

namespace paramsynth {

namespace {

bool allDigits(std::string_view text) {
    if (text.empty()) {
        return false;
    }
    for (char c : text) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

// Unsigned decimal "12", "12.5", ".5", "12.".
bool parseUnsignedDecimal(std::string_view text, Rational& result) {
    auto dot = text.find('.');
    if (dot == std::string_view::npos) {
        if (!allDigits(text)) {
            return false;
        }
        result = Rational(Integer(std::string(text), 10));
        return true;
    }
    std::string_view whole = text.substr(0, dot);
    std::string_view fraction = text.substr(dot + 1);
    if (whole.empty() && fraction.empty()) {
        return false;
    }
    if ((!whole.empty() && !allDigits(whole)) || (!fraction.empty() && !allDigits(fraction))) {
        return false;
    }
    Integer numerator(std::string(whole.empty() ? "0" : whole) + std::string(fraction), 10);
    Integer denominator;
    mpz_ui_pow_ui(denominator.get_mpz_t(), 10, fraction.size());
    result = Rational(numerator, denominator);
    result.canonicalize();
    return true;
}

}  // namespace

bool tryParseRational(std::string_view text, Rational& result) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.remove_suffix(1);
    }
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    auto slash = text.find('/');
    Rational value;
    if (slash == std::string_view::npos) {
        if (!parseUnsignedDecimal(text, value)) {
            return false;
        }
    } else {
        std::string_view num = text.substr(0, slash);
        std::string_view den = text.substr(slash + 1);
        if (!allDigits(num) || !allDigits(den)) {
            return false;
        }
        Integer d(std::string{den}, 10);
        if (d == 0) {
            return false;
        }
        value = Rational(Integer(std::string{num}, 10), d);
        value.canonicalize();
    }
    result = negative ? Rational(-value) : value;
    return true;
}

Rational parseRational(std::string_view text) {
    Rational result;
    if (!tryParseRational(text, result)) {
        throw ParseError("malformed rational '" + std::string(text) + "'", 0, 0);
    }
    return result;
}

std::string toString(Rational const& value) {
    return value.get_str();
}

double toDouble(Rational const& value) {
    return value.get_d();
}

Rational power(Rational const& base, unsigned exponent) {
    Rational result;
    mpz_pow_ui(mpq_numref(result.get_mpq_t()), base.get_num().get_mpz_t(), exponent);
    mpz_pow_ui(mpq_denref(result.get_mpq_t()), base.get_den().get_mpz_t(), exponent);
    return result;
}

}  // namespace paramsynth
