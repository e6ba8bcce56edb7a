#include "cnp/report.hpp"

#include <cstdio>

namespace cnp {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Report Report::object() {
    Report r;
    r.type_ = Type::Object;
    return r;
}

Report Report::array() {
    Report r;
    r.type_ = Type::Array;
    return r;
}

Report Report::str(std::string s) {
    Report r;
    r.type_ = Type::String;
    r.string_ = std::move(s);
    return r;
}

Report Report::num(double v) {
    Report r;
    r.type_ = Type::Number;
    r.number_ = v;
    return r;
}

Report Report::integer(long long v) {
    Report r;
    r.type_ = Type::Integer;
    r.integer_ = v;
    return r;
}

Report Report::boolean(bool v) {
    Report r;
    r.type_ = Type::Bool;
    r.bool_ = v;
    return r;
}

Report Report::complex_num(std::complex<double> z) {
    Report r = object();
    r.set("re", num(z.real()));
    r.set("im", num(z.imag()));
    return r;
}

Report& Report::set(const std::string& key, Report value) {
    members_.emplace_back(key, std::move(value));
    return *this;
}

Report& Report::push(Report value) {
    items_.push_back(std::move(value));
    return *this;
}

namespace {

void write_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    out += '"';
}

void pad(std::string& out, int indent) {
    out.append(static_cast<size_t>(indent) * 2, ' ');
}

}  // namespace

void Report::write(std::string& out, int indent) const {
    switch (type_) {
        case Type::String:
            write_escaped(out, string_);
            break;
        case Type::Number:
            out += format_double(number_);
            break;
        case Type::Integer:
            out += std::to_string(integer_);
            break;
        case Type::Bool:
            out += bool_ ? "true" : "false";
            break;
        case Type::Object: {
            if (members_.empty()) {
                out += "{}";
                break;
            }
            out += "{\n";
            for (size_t i = 0; i < members_.size(); ++i) {
                pad(out, indent + 1);
                write_escaped(out, members_[i].first);
                out += ": ";
                members_[i].second.write(out, indent + 1);
                if (i + 1 < members_.size()) out += ',';
                out += '\n';
            }
            pad(out, indent);
            out += '}';
            break;
        }
        case Type::Array: {
            if (items_.empty()) {
                out += "[]";
                break;
            }
            out += "[\n";
            for (size_t i = 0; i < items_.size(); ++i) {
                pad(out, indent + 1);
                items_[i].write(out, indent + 1);
                if (i + 1 < items_.size()) out += ',';
                out += '\n';
            }
            pad(out, indent);
            out += ']';
            break;
        }
    }
}

std::string Report::to_string() const {
    std::string out;
    write(out, 0);
    out += '\n';
    return out;
}

}  // namespace cnp
