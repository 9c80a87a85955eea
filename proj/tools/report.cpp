#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace cli {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

double scaled(double v, bool entropic, bool bits) { return entropic && bits ? v / kLn2 : v; }

// JSON value for a double; non-finite values have no JSON form, so they are
// emitted as the strings "inf" / "-inf" / "nan"
std::string json_number(double v) {
    if (std::isnan(v)) return "\"nan\"";
    if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
    return format_number(v);
}

std::string csv_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return format_number(v);
}

void indent_to(std::string& out, int indent) {
    out.append(static_cast<std::size_t>(indent) * 2, ' ');
}

} // namespace

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void Doc::num(const std::string& key, double v, bool entropic) {
    entries_.emplace_back(key, Num{v, entropic});
}

void Doc::integer(const std::string& key, long long v) { entries_.emplace_back(key, v); }

void Doc::boolean(const std::string& key, bool v) { entries_.emplace_back(key, v); }

void Doc::text(const std::string& key, const std::string& v) { entries_.emplace_back(key, v); }

void Doc::numbers(const std::string& key, const std::vector<double>& v, bool entropic) {
    entries_.emplace_back(key, Arr{v, entropic});
}

Doc& Doc::obj(const std::string& key) {
    entries_.emplace_back(key, std::make_unique<Doc>());
    return *std::get<std::unique_ptr<Doc>>(entries_.back().second);
}

void Doc::emit_json(std::string& out, bool bits, int indent) const {
    out += "{\n";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        indent_to(out, indent + 1);
        out += '"';
        out += entries_[i].first;
        out += "\": ";
        const Value& v = entries_[i].second;
        if (const auto* n = std::get_if<Num>(&v)) {
            out += json_number(scaled(n->v, n->entropic, bits));
        } else if (const auto* iv = std::get_if<long long>(&v)) {
            out += std::to_string(*iv);
        } else if (const auto* b = std::get_if<bool>(&v)) {
            out += *b ? "true" : "false";
        } else if (const auto* s = std::get_if<std::string>(&v)) {
            out += '"';
            out += *s;
            out += '"';
        } else if (const auto* a = std::get_if<Arr>(&v)) {
            out += '[';
            for (std::size_t k = 0; k < a->v.size(); ++k) {
                if (k) out += ", ";
                out += json_number(scaled(a->v[k], a->entropic, bits));
            }
            out += ']';
        } else {
            std::get<std::unique_ptr<Doc>>(v)->emit_json(out, bits, indent + 1);
        }
        if (i + 1 < entries_.size()) out += ',';
        out += '\n';
    }
    indent_to(out, indent);
    out += '}';
}

std::string Doc::to_json(bool bits) const {
    std::string out;
    emit_json(out, bits, 0);
    out += '\n';
    return out;
}

void Doc::emit_csv(std::string& out, bool bits, const std::string& prefix) const {
    for (const auto& [key, v] : entries_) {
        const std::string path = prefix.empty() ? key : prefix + "." + key;
        if (const auto* n = std::get_if<Num>(&v)) {
            out += path + "," + csv_number(scaled(n->v, n->entropic, bits)) + "\n";
        } else if (const auto* iv = std::get_if<long long>(&v)) {
            out += path + "," + std::to_string(*iv) + "\n";
        } else if (const auto* b = std::get_if<bool>(&v)) {
            out += path + "," + (*b ? "true" : "false") + "\n";
        } else if (const auto* s = std::get_if<std::string>(&v)) {
            out += path + "," + *s + "\n";
        } else if (const auto* a = std::get_if<Arr>(&v)) {
            for (std::size_t k = 0; k < a->v.size(); ++k)
                out += path + "." + std::to_string(k) + "," +
                       csv_number(scaled(a->v[k], a->entropic, bits)) + "\n";
        } else {
            std::get<std::unique_ptr<Doc>>(v)->emit_csv(out, bits, path);
        }
    }
}

std::string Doc::to_csv(bool bits) const {
    std::string out = "key,value\n";
    emit_csv(out, bits, "");
    return out;
}

std::string Curve::to_csv(bool bits) const {
    std::string out;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (c) out += ',';
        out += columns[c];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            const bool e = c < entropic.size() && entropic[c];
            out += csv_number(scaled(row[c], e, bits));
        }
        out += '\n';
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw std::runtime_error("write failed: " + path);
}

} // namespace cli
