#include "roofline/cachesim.hpp"

#include <algorithm>
#include <bit>
#include <cinttypes>
#include <cstdio>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "roofline/errors.hpp"

namespace roofline::cachesim {

namespace {

struct Line {
    std::uint64_t tag = 0;
    std::uint64_t lru = 0;  // higher = more recently used
    bool valid = false;
    bool dirty = false;
};

class Level {
  public:
    Level(const CacheLevelConfig& config, LevelStats& stats)
        : config_(config),
          stats_(stats),
          sets_(config.capacity / (static_cast<std::uint64_t>(config.line_size) *
                                   config.associativity)),
          lines_(sets_ * config.associativity) {}

    std::uint32_t line_size() const { return config_.line_size; }
    std::uint64_t set_count() const { return sets_; }

    struct Outcome {
        bool hit = false;
        bool evicted_dirty = false;
        std::uint64_t victim_addr = 0;  // line base address of the dirty victim
    };

    // One line-aligned access. The caller guarantees addr is a multiple of
    // line_size.
    Outcome access(std::uint64_t addr, bool is_write) {
        ++stats_.accesses;
        std::uint64_t line_index = addr / config_.line_size;
        std::uint64_t set = line_index % sets_;
        Line* base = &lines_[set * config_.associativity];

        Outcome out;
        for (std::uint32_t w = 0; w < config_.associativity; ++w) {
            Line& line = base[w];
            if (line.valid && line.tag == line_index) {
                ++stats_.hits;
                line.lru = ++clock_;
                if (is_write) line.dirty = true;
                out.hit = true;
                return out;
            }
        }

        ++stats_.misses;
        stats_.bytes_in += config_.line_size;

        // Victim: first invalid way, else LRU.
        Line* victim = base;
        for (std::uint32_t w = 0; w < config_.associativity; ++w) {
            Line& line = base[w];
            if (!line.valid) {
                victim = &line;
                break;
            }
            if (line.lru < victim->lru) victim = &line;
        }
        if (victim->valid && victim->dirty) {
            ++stats_.writebacks;
            stats_.bytes_out += config_.line_size;
            out.evicted_dirty = true;
            out.victim_addr = victim->tag * config_.line_size;
        }
        victim->valid = true;
        victim->dirty = is_write;
        victim->tag = line_index;
        victim->lru = ++clock_;
        return out;
    }

    // Deterministic set-then-way sweep collecting dirty lines for the
    // end-of-trace drain. Cleans them in place.
    std::vector<std::uint64_t> take_dirty_lines() {
        std::vector<std::uint64_t> addrs;
        for (Line& line : lines_) {
            if (line.valid && line.dirty) {
                line.dirty = false;
                addrs.push_back(line.tag * config_.line_size);
            }
        }
        std::sort(addrs.begin(), addrs.end());
        return addrs;
    }

    void count_drain_writeback() {
        ++stats_.writebacks;
        stats_.bytes_out += config_.line_size;
    }

  private:
    CacheLevelConfig config_;
    LevelStats& stats_;
    std::uint64_t sets_;
    std::vector<Line> lines_;
    std::uint64_t clock_ = 0;
};

class Hierarchy {
  public:
    Hierarchy(const std::vector<CacheLevelConfig>& configs, SimResult& result) : result_(result) {
        result_.levels.resize(configs.size());
        levels_.reserve(configs.size());
        for (std::size_t i = 0; i < configs.size(); ++i) {
            result_.levels[i].name = configs[i].name;
            levels_.emplace_back(configs[i], result_.levels[i]);
        }
    }

    // Access at level k, splitting [addr, addr+size) into level-k lines.
    // Misses fall through to k+1 as line fills; dirty evictions push down
    // as line writebacks.
    void access(std::size_t k, std::uint64_t addr, std::uint64_t size, bool is_write) {
        if (k == levels_.size()) {
            if (is_write) {
                ++result_.memory_writebacks;
            } else {
                ++result_.memory_fills;
            }
            return;
        }
        Level& level = levels_[k];
        std::uint64_t line = level.line_size();
        std::uint64_t first = addr / line;
        std::uint64_t last = (addr + size - 1) / line;
        for (std::uint64_t l = first; l <= last; ++l) {
            auto outcome = level.access(l * line, is_write);
            if (!outcome.hit) access(k + 1, l * line, line, false);
            if (outcome.evicted_dirty) access(k + 1, outcome.victim_addr, line, true);
        }
    }

    void drain() {
        for (std::size_t k = 0; k < levels_.size(); ++k) {
            for (std::uint64_t addr : levels_[k].take_dirty_lines()) {
                levels_[k].count_drain_writeback();
                access(k + 1, addr, levels_[k].line_size(), true);
            }
        }
    }

  private:
    std::vector<Level> levels_;
    SimResult& result_;
};

std::uint64_t line_of(std::uint64_t addr, std::uint32_t line_size) { return addr / line_size; }

}  // namespace

void validate_hierarchy(const std::vector<CacheLevelConfig>& hierarchy) {
    if (hierarchy.empty()) throw ConfigError("cache hierarchy must have at least one level");
    std::uint32_t prev_line = 0;
    for (const CacheLevelConfig& c : hierarchy) {
        if (c.name.empty()) throw ConfigError("cache level with empty name");
        if (c.name == kMemoryLevelName)
            throw ConfigError("level name '" + std::string(kMemoryLevelName) +
                              "' is reserved for the backing memory");
        if (c.line_size == 0 || !std::has_single_bit(c.line_size))
            throw ConfigError("level '" + c.name + "': line_size must be a power of two");
        if (c.associativity == 0)
            throw ConfigError("level '" + c.name + "': associativity must be >= 1");
        std::uint64_t way_bytes = static_cast<std::uint64_t>(c.line_size) * c.associativity;
        if (c.capacity == 0 || c.capacity % way_bytes != 0)
            throw ConfigError("level '" + c.name +
                              "': capacity must be a positive multiple of line_size * "
                              "associativity");
        if (c.line_size < prev_line)
            throw ConfigError("level '" + c.name +
                              "': line sizes must not shrink with depth (traffic accounting "
                              "assumes a nearer line fits in one deeper line)");
        prev_line = c.line_size;
    }
}

SimResult simulate(std::span<const AccessEvent> trace,
                   const std::vector<CacheLevelConfig>& hierarchy, const SimOptions& options) {
    validate_hierarchy(hierarchy);
    SimResult result;
    Hierarchy sim(hierarchy, result);

    for (const AccessEvent& event : trace) {
        if (event.size == 0 || event.size > 64)
            throw ConfigError("access event size must be 1..64 bytes, got " +
                              std::to_string(event.size));
        result.requested_bytes += event.size;
        sim.access(0, event.address, event.size, event.kind == AccessKind::Write);
    }
    if (options.drain_dirty_at_end) sim.drain();

    result.memory_bytes =
        (result.memory_fills + result.memory_writebacks) * hierarchy.back().line_size;
    return result;
}

std::map<std::string, double> SimResult::roofline_bytes() const {
    std::map<std::string, double> out;
    if (levels.empty()) return out;
    out[levels[0].name] = static_cast<double>(requested_bytes);
    for (std::size_t k = 1; k < levels.size(); ++k)
        out[levels[k].name] = static_cast<double>(levels[k - 1].bytes_in + levels[k - 1].bytes_out);
    out[kMemoryLevelName] = static_cast<double>(memory_bytes);
    return out;
}

MeasurementSummary SimResult::to_summary(const std::string& label,
                                         std::map<Precision, double> flops) const {
    MeasurementSummary summary;
    summary.label = label;
    summary.bytes = roofline_bytes();
    summary.flops = std::move(flops);
    if (summary.flops.empty())
        summary.warnings.push_back("trace carries no FLOP counts; AI cannot be formed");
    return summary;
}

std::uint64_t stack_distance_oracle(std::span<const AccessEvent> trace,
                                    std::uint64_t capacity_lines, std::uint32_t line_size) {
    // Expand to per-line touches exactly like the simulator's splitting.
    std::vector<std::uint64_t> touches;
    for (const AccessEvent& event : trace) {
        std::uint64_t first = line_of(event.address, line_size);
        std::uint64_t last = line_of(event.address + event.size - 1, line_size);
        for (std::uint64_t l = first; l <= last; ++l) touches.push_back(l);
    }

    std::uint64_t misses = 0;
    for (std::size_t i = 0; i < touches.size(); ++i) {
        std::unordered_set<std::uint64_t> distinct;
        bool seen = false;
        for (std::size_t j = i; j-- > 0;) {
            if (touches[j] == touches[i]) {
                seen = true;
                break;
            }
            distinct.insert(touches[j]);
        }
        if (!seen || distinct.size() >= capacity_lines) ++misses;
    }
    return misses;
}

AccessTrace parse_trace(const std::string& text) {
    AccessTrace trace;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto fail = [&](const std::string& why) {
            throw MalformedInputError("trace line " + std::to_string(lineno) + ": " + why);
        };
        // Trim and skip comments/blanks.
        std::size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        std::size_t e = line.find_last_not_of(" \t\r");
        std::string t = line.substr(b, e - b + 1);
        if (t[0] == '#') continue;

        std::istringstream fields(t);
        std::string kind, addr_text;
        std::uint64_t size = 0;
        if (!(fields >> kind >> addr_text >> size))
            fail("expected 'R|W <hex-address> <size>'");
        AccessEvent event;
        if (kind == "R" || kind == "r")
            event.kind = AccessKind::Read;
        else if (kind == "W" || kind == "w")
            event.kind = AccessKind::Write;
        else
            fail("unknown access kind '" + kind + "'");
        try {
            event.address = std::stoull(addr_text, nullptr, 16);
        } catch (const std::exception&) {
            fail("bad hex address '" + addr_text + "'");
        }
        if (size == 0 || size > 64) fail("size must be 1..64");
        event.size = static_cast<std::uint32_t>(size);
        trace.push_back(event);
    }
    return trace;
}

std::string format_trace(std::span<const AccessEvent> trace) {
    std::string out;
    char buf[64];
    for (const AccessEvent& event : trace) {
        std::snprintf(buf, sizeof(buf), "%c 0x%" PRIx64 " %u\n",
                      event.kind == AccessKind::Read ? 'R' : 'W', event.address, event.size);
        out += buf;
    }
    return out;
}

std::vector<CacheLevelConfig> hierarchy_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("hierarchy JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("levels") || !doc["levels"].is_array())
        throw ConfigError("hierarchy JSON: expected {\"levels\": [...]} at top level");

    std::vector<CacheLevelConfig> out;
    std::size_t index = 0;
    for (const auto& entry : doc["levels"]) {
        std::string where = "hierarchy JSON: levels[" + std::to_string(index) + "]";
        if (!entry.is_object()) throw ConfigError(where + " must be an object");
        CacheLevelConfig c;
        try {
            c.name = entry.at("name").get<std::string>();
            c.capacity = entry.at("capacity").get<std::uint64_t>();
            c.associativity = entry.at("associativity").get<std::uint32_t>();
            c.line_size = entry.at("line_size").get<std::uint32_t>();
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(where + ": " + e.what());
        }
        if (entry.contains("write_policy") &&
            entry["write_policy"].get<std::string>() != "write_back_write_allocate")
            throw ConfigError(where + ".write_policy: only write_back_write_allocate is supported");
        out.push_back(std::move(c));
        ++index;
    }
    validate_hierarchy(out);
    return out;
}

std::vector<CacheLevelConfig> default_hierarchy() {
    return {
        {"L1", 32u * 1024, 8, 64, WritePolicy::WriteBackWriteAllocate},
        {"L2", 1024u * 1024, 16, 64, WritePolicy::WriteBackWriteAllocate},
    };
}

}  // namespace roofline::cachesim
