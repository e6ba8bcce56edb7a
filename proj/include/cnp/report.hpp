#pragma once

#include <complex>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace cnp {

/**
 * Ordered JSON document with explicit number formatting (17 significant
 * digits), so identical inputs serialize to identical bytes.
 */
class Report {
public:
    static Report object();
    static Report array();
    static Report str(std::string s);
    static Report num(double v);
    static Report integer(long long v);
    static Report boolean(bool v);
    static Report complex_num(std::complex<double> z);

    Report& set(const std::string& key, Report value);  // objects, insertion order kept
    Report& push(Report value);                         // arrays

    std::string to_string() const;

private:
    enum class Type { Object, Array, String, Number, Integer, Bool };
    Type type_ = Type::Object;
    std::string string_;
    double number_ = 0.0;
    long long integer_ = 0;
    bool bool_ = false;
    std::vector<std::pair<std::string, Report>> members_;
    std::vector<Report> items_;

    void write(std::string& out, int indent) const;
};

std::string format_double(double v);

}  // namespace cnp
