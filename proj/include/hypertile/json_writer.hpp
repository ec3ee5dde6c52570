#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

namespace hypertile {

// Minimal JSON emitter with deterministic output: keys appear in the order
// they are written and doubles are always formatted with 17 significant
// digits, so identical inputs give byte-identical documents.
class JsonWriter {
public:
    std::string take() { return std::move(out_); }
    const std::string& str() const { return out_; }

    JsonWriter& begin_object() { prefix(); out_ += '{'; stack_.push_back({true, true}); return *this; }
    JsonWriter& end_object() { pop('}'); return *this; }
    JsonWriter& begin_array() { prefix(); out_ += '['; stack_.push_back({false, true}); return *this; }
    JsonWriter& end_array() { pop(']'); return *this; }

    JsonWriter& key(const std::string& k) {
        comma();
        newline();
        append_string(k);
        out_ += ": ";
        pending_key_ = true;
        return *this;
    }

    JsonWriter& value(const std::string& v) { prefix(); append_string(v); return *this; }
    JsonWriter& value(const char* v) { return value(std::string(v)); }
    JsonWriter& value(double v) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        prefix();
        out_ += buf;
        return *this;
    }
    JsonWriter& value(std::int64_t v) { prefix(); out_ += std::to_string(v); return *this; }
    JsonWriter& value(int v) { return value(std::int64_t(v)); }
    JsonWriter& value(std::size_t v) { prefix(); out_ += std::to_string(v); return *this; }
    JsonWriter& value(bool v) { prefix(); out_ += v ? "true" : "false"; return *this; }

private:
    struct Frame {
        bool object;
        bool first;
    };

    void comma() {
        if (!stack_.empty() && !stack_.back().first) out_ += ',';
        if (!stack_.empty()) stack_.back().first = false;
    }

    void newline() {
        out_ += '\n';
        out_.append(2 * stack_.size(), ' ');
    }

    void prefix() {
        if (pending_key_) {
            pending_key_ = false;
            return;
        }
        if (!stack_.empty()) {
            comma();
            newline();
        }
    }

    void pop(char close) {
        bool empty = stack_.back().first;
        stack_.pop_back();
        if (!empty) {
            out_ += '\n';
            out_.append(2 * stack_.size(), ' ');
        }
        out_ += close;
        if (stack_.empty()) out_ += '\n';
    }

    void append_string(const std::string& s) {
        out_ += '"';
        for (char c : s) {
            switch (c) {
                case '"': out_ += "\\\""; break;
                case '\\': out_ += "\\\\"; break;
                case '\n': out_ += "\\n"; break;
                case '\t': out_ += "\\t"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof buf, "\\u%04x", c);
                        out_ += buf;
                    } else {
                        out_ += c;
                    }
            }
        }
        out_ += '"';
    }

    std::string out_;
    std::vector<Frame> stack_;
    bool pending_key_ = false;
};

} // namespace hypertile
