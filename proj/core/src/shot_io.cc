#include "tmsr/shot_io.h"

#include <array>
#include <bit>
#include <charconv>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

#include "tmsr/errors.h"

namespace tmsr {

namespace {

constexpr std::string_view kModule = "shot_engine";
constexpr std::string_view kMagic = "TMSRSHT1";
constexpr std::string_view kHeaderTag = "# tmsr-shots";
constexpr std::string_view kColumns = "label,I_a,Q_a,I_b,Q_b";

static_assert(std::endian::native == std::endian::little, "binary shot format assumes a little-endian host");

double parse_double(std::string_view text) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw DomainError(kModule, "malformed number '" + std::string(text) + "'");
    }
    return value;
}

std::uint64_t parse_u64(std::string_view text) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw DomainError(kModule, "malformed integer '" + std::string(text) + "'");
    }
    return value;
}

void parse_header_line(std::string_view line, ShotHeader &header) {
    std::istringstream fields{std::string(line.substr(kHeaderTag.size()))};
    std::string token;
    while (fields >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) {
            throw DomainError(kModule, "malformed shot header field '" + token + "'");
        }
        const std::string_view key = std::string_view(token).substr(0, eq);
        const std::string_view value = std::string_view(token).substr(eq + 1);
        if (key == "seed") header.seed = parse_u64(value);
        else if (key == "cell") header.cell = parse_u64(value);
        else if (key == "r") header.r = parse_double(value);
        else if (key == "nbar_in") header.nbar_in = parse_double(value);
        else if (key == "theta") header.theta = parse_double(value);
        else if (key == "n_sys_a") header.n_sys_a = parse_double(value);
        else if (key == "n_sys_b") header.n_sys_b = parse_double(value);
        else if (key == "shots_per_state") header.shots_per_state = parse_u64(value);
        else throw DomainError(kModule, "unknown shot header field '" + std::string(key) + "'");
    }
}

template <typename T>
void put(std::ostream &out, T value) {
    std::array<char, sizeof(T)> bytes;
    std::memcpy(bytes.data(), &value, sizeof(T));
    out.write(bytes.data(), bytes.size());
}

template <typename T>
T get(std::istream &in) {
    std::array<char, sizeof(T)> bytes;
    if (!in.read(bytes.data(), bytes.size())) {
        throw DomainError(kModule, "truncated binary shot file");
    }
    T value;
    std::memcpy(&value, bytes.data(), sizeof(T));
    return value;
}

}  // namespace

std::string format_double(double value) {
    std::array<char, 32> buf;
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

void write_shots_csv(std::ostream &out, const ShotSet &set, const std::vector<std::string> &preamble) {
    for (const std::string &line : preamble) {
        out << "# " << line << '\n';
    }
    const ShotHeader &h = set.header;
    out << kHeaderTag << " seed=" << h.seed << " cell=" << h.cell << " r=" << format_double(h.r)
        << " nbar_in=" << format_double(h.nbar_in) << " theta=" << format_double(h.theta)
        << " n_sys_a=" << format_double(h.n_sys_a) << " n_sys_b=" << format_double(h.n_sys_b)
        << " shots_per_state=" << h.shots_per_state << '\n';
    out << kColumns << '\n';
    for (const Shot &s : set.shots) {
        out << to_string(s.label) << ',' << format_double(s.quad.i_a) << ',' << format_double(s.quad.q_a) << ','
            << format_double(s.quad.i_b) << ',' << format_double(s.quad.q_b) << '\n';
    }
}

ShotSet read_shots_csv(std::istream &in) {
    ShotSet set;
    std::string line;
    bool seen_columns = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        if (line.starts_with(kHeaderTag)) {
            parse_header_line(line, set.header);
            continue;
        }
        if (line.front() == '#') {
            continue;
        }
        if (!seen_columns) {
            if (line != kColumns) {
                throw DomainError(kModule, "line " + std::to_string(line_no) + ": expected header '" +
                                               std::string(kColumns) + "'");
            }
            seen_columns = true;
            continue;
        }
        std::array<std::string_view, 5> cells;
        std::string_view rest(line);
        for (std::size_t k = 0; k < cells.size(); ++k) {
            const auto comma = rest.find(',');
            if ((comma == std::string_view::npos) != (k == cells.size() - 1)) {
                throw DomainError(kModule, "line " + std::to_string(line_no) + ": expected 5 columns");
            }
            cells[k] = rest.substr(0, comma);
            rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        }
        Shot shot;
        if (cells[0] == "g") shot.label = QubitState::ground;
        else if (cells[0] == "e") shot.label = QubitState::excited;
        else throw DomainError(kModule, "line " + std::to_string(line_no) + ": label must be g or e");
        shot.quad = {parse_double(cells[1]), parse_double(cells[2]), parse_double(cells[3]), parse_double(cells[4])};
        set.shots.push_back(shot);
    }
    if (!seen_columns) {
        throw DomainError(kModule, "missing column header in shot CSV");
    }
    return set;
}

void write_shots_binary(std::ostream &out, const ShotSet &set) {
    out.write(kMagic.data(), kMagic.size());
    const ShotHeader &h = set.header;
    put(out, h.seed);
    put(out, h.cell);
    put(out, h.r);
    put(out, h.nbar_in);
    put(out, h.theta);
    put(out, h.n_sys_a);
    put(out, h.n_sys_b);
    put(out, h.shots_per_state);
    put(out, static_cast<std::uint64_t>(set.shots.size()));
    for (const Shot &s : set.shots) {
        put(out, static_cast<std::uint8_t>(s.label));
        put(out, s.quad.i_a);
        put(out, s.quad.q_a);
        put(out, s.quad.i_b);
        put(out, s.quad.q_b);
    }
}

ShotSet read_shots_binary(std::istream &in) {
    std::array<char, kMagic.size()> magic;
    if (!in.read(magic.data(), magic.size()) || std::string_view(magic.data(), magic.size()) != kMagic) {
        throw DomainError(kModule, "not a binary shot file (bad magic)");
    }
    ShotSet set;
    ShotHeader &h = set.header;
    h.seed = get<std::uint64_t>(in);
    h.cell = get<std::uint64_t>(in);
    h.r = get<double>(in);
    h.nbar_in = get<double>(in);
    h.theta = get<double>(in);
    h.n_sys_a = get<double>(in);
    h.n_sys_b = get<double>(in);
    h.shots_per_state = get<std::uint64_t>(in);
    const auto n = get<std::uint64_t>(in);
    set.shots.reserve(n);
    for (std::uint64_t k = 0; k < n; ++k) {
        const auto label = get<std::uint8_t>(in);
        if (label > 1) {
            throw DomainError(kModule, "invalid label byte in binary shot file");
        }
        Shot s;
        s.label = static_cast<QubitState>(label);
        s.quad.i_a = get<double>(in);
        s.quad.q_a = get<double>(in);
        s.quad.i_b = get<double>(in);
        s.quad.q_b = get<double>(in);
        set.shots.push_back(s);
    }
    return set;
}

}  // namespace tmsr
