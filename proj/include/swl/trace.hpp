#pragma once

#include <ostream>
#include <sstream>
#include <string>

namespace swl {

enum class TraceKind {
    Send,
    Deliver,
    Phase,
    Move,
    Swap,
    Integrate,
    GtmClip,
    WaveStart,
    Terminate,
};

const char* trace_kind_name(TraceKind k);

/// Flat event record; field meaning depends on kind:
///   Send:         a = message type, b = recipient (or -1 broadcast)
///   Deliver:      a = message type, b = sender (robot = recipient)
///   Phase:        a = new phase
///   Move:         x = distance moved
///   Swap:         a = partner label, b = wave index
///   Integrate:    a = owner label, b = successor label
///   WaveStart:    a = wave index, b = parity (1 = master-first)
struct TraceEvent {
    long tick = 0;
    TraceKind kind = TraceKind::Send;
    int robot = -1;
    int a = 0;
    int b = 0;
    double x = 0.0;
};

class TraceSink {
public:
    virtual ~TraceSink() = default;
    virtual void emit(const TraceEvent& e) = 0;
};

class NullSink final : public TraceSink {
public:
    void emit(const TraceEvent&) override {}
};

/// JSON-lines, one object per event.
class JsonlSink final : public TraceSink {
public:
    explicit JsonlSink(std::ostream& out) : out_(out) {}
    void emit(const TraceEvent& e) override;

private:
    std::ostream& out_;
};

/// In-memory JSONL buffer, used for byte-identity checks.
class StringSink final : public TraceSink {
public:
    StringSink() : jsonl_(buf_) {}
    void emit(const TraceEvent& e) override { jsonl_.emit(e); }
    std::string str() const { return buf_.str(); }

private:
    std::ostringstream buf_;
    JsonlSink jsonl_;
};

}  // namespace swl
