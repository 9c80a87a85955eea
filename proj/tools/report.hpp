#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace cli {

// Ordered report document.  Keys keep insertion order so serialization is
// byte-stable; values tagged entropic are the ones rescaled by 1/ln2 when
// the user asks for bits.
class Doc {
public:
    void num(const std::string& key, double v, bool entropic = false);
    void integer(const std::string& key, long long v);
    void boolean(const std::string& key, bool v);
    void text(const std::string& key, const std::string& v);
    void numbers(const std::string& key, const std::vector<double>& v, bool entropic = false);
    Doc& obj(const std::string& key);

    std::string to_json(bool bits) const;                  // trailing newline included
    std::string to_csv(bool bits) const;                   // key,value rows, dotted paths

private:
    struct Num {
        double v;
        bool entropic;
    };
    struct Arr {
        std::vector<double> v;
        bool entropic;
    };
    using Value = std::variant<Num, long long, bool, std::string, Arr, std::unique_ptr<Doc>>;
    std::vector<std::pair<std::string, Value>> entries_;

    void emit_json(std::string& out, bool bits, int indent) const;
    void emit_csv(std::string& out, bool bits, const std::string& prefix) const;
};

// One curve file: header row, then one row per point, `%.17g` cells.
struct Curve {
    std::vector<std::string> columns;
    std::vector<bool> entropic; // per column; empty = none
    std::vector<std::vector<double>> rows;

    std::string to_csv(bool bits) const;
};

// 17-significant-digit rendering; non-finite values become inf/-inf/nan.
std::string format_number(double v);

void write_file(const std::string& path, const std::string& content);

} // namespace cli
