#include "surgact/log.hpp"

#include <cstdlib>
#include <cstring>

namespace surgact::log {

namespace {

Level parse_env() {
    const char* v = std::getenv("SURGACT_LOG");
    if (!v) return Level::Warn;
    if (std::strcmp(v, "error") == 0) return Level::Error;
    if (std::strcmp(v, "warn") == 0) return Level::Warn;
    if (std::strcmp(v, "info") == 0) return Level::Info;
    if (std::strcmp(v, "debug") == 0) return Level::Debug;
    return Level::Warn;
}

Level g_level = parse_env();

const char* tag(Level lv) {
    switch (lv) {
        case Level::Error: return "error";
        case Level::Warn: return "warn";
        case Level::Info: return "info";
        case Level::Debug: return "debug";
    }
    return "?";
}

}  // namespace

Level level() { return g_level; }
void set_level(Level lv) { g_level = lv; }

void write(Level lv, const std::string& msg) {
    if (static_cast<int>(lv) > static_cast<int>(g_level)) return;
    std::fprintf(stderr, "[surgact:%s] %s\n", tag(lv), msg.c_str());
}

}  // namespace surgact::log
