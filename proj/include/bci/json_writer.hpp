#pragma once

// Minimal streaming JSON writer with a fixed number format (%.17g) so that
// identical inputs give byte-identical output.

#include <string>
#include <string_view>
#include <vector>

#include "bci/branch.hpp"

namespace bci {

/// %.17g; non-finite values become null.
std::string format_double(double x);

class JsonWriter {
public:
    explicit JsonWriter(bool pretty = false) : pretty_(pretty) {}

    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(std::string_view name);

    JsonWriter& value(double x);
    JsonWriter& value(long x);
    JsonWriter& value(int x) { return value(static_cast<long>(x)); }
    JsonWriter& value(bool x);
    JsonWriter& value(std::string_view s);
    JsonWriter& value(const char* s) { return value(std::string_view(s)); }
    JsonWriter& value(cplx z);  // [re, im]
    JsonWriter& null();

    const std::string& str() const { return out_; }

private:
    void separate();
    void newline();

    std::string out_;
    std::vector<bool> first_;  // per open container: no element written yet
    bool pretty_;
    bool after_key_ = false;
};

std::string json_escape(std::string_view s);

}  // namespace bci
