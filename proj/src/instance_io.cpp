#include <arcpath/error.hpp>
#include <arcpath/instance_io.hpp>

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

namespace arcpath {

namespace {

std::vector<std::string_view> split_words(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
            ++i;
        auto start = i;
        while (i < line.size() && !(line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
            ++i;
        if (i > start)
            out.push_back(line.substr(start, i - start));
    }
    return out;
}

std::optional<std::int64_t> to_int(std::string_view s)
{
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        return std::nullopt;
    return v;
}

} // namespace

Instance parse_instance(std::string_view text)
{
    std::optional<Circle> circle;
    std::vector<Arc> arcs;
    std::vector<std::vector<ArcIndex>> chains;
    std::size_t lineno = 0;
    while (!text.empty()) {
        ++lineno;
        auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        auto words = split_words(line);
        if (words.empty())
            continue;

        auto number = [&](std::string_view w) {
            auto v = to_int(w);
            if (!v)
                throw ParseError(lineno, "expected an integer, got '" + std::string(w) + "'");
            return *v;
        };

        if (words[0] == "circle") {
            if (words.size() != 2)
                throw ParseError(lineno, "usage: circle T");
            if (circle)
                throw ParseError(lineno, "circle declared twice");
            auto t = number(words[1]);
            if (t < 2)
                throw ParseError(lineno, "circle needs at least 2 ticks");
            circle.emplace(t);
        }
        else if (words[0] == "arc") {
            if (!circle)
                throw ParseError(lineno, "arc before circle");
            if (words.size() == 2 && words[1] == "full") {
                arcs.push_back(Arc::full());
                continue;
            }
            if (words.size() != 3)
                throw ParseError(lineno, "usage: arc L R | arc full");
            auto l = number(words[1]);
            auto r = number(words[2]);
            if (l < 0 || r < 0 || l >= circle->ticks() || r >= circle->ticks())
                throw ParseError(lineno, "arc endpoint outside [0, T)");
            if (l == r)
                throw ParseError(lineno, "arc endpoints must differ");
            arcs.push_back(Arc::proper(l, r));
        }
        else if (words[0] == "chain") {
            std::vector<ArcIndex> chain;
            for (std::size_t i = 1; i < words.size(); ++i) {
                auto v = number(words[i]);
                if (v < 0)
                    throw ParseError(lineno, "negative arc index");
                chain.push_back(static_cast<ArcIndex>(v));
            }
            chains.push_back(std::move(chain));
        }
        else {
            throw ParseError(lineno, "unknown statement '" + std::string(words[0]) + "'");
        }
    }
    if (!circle)
        throw ParseError(lineno, "missing circle statement");
    if (arcs.empty())
        throw ParseError(lineno, "no arcs");
    try {
        return Instance{ArcFamily(*circle, std::move(arcs)), std::move(chains)};
    }
    catch (const PreconditionViolated & e) {
        throw ParseError(lineno, e.what());
    }
}

Instance load_instance(const std::filesystem::path & path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

std::string format_instance(const ArcFamily & family, const std::vector<std::vector<ArcIndex>> & chains)
{
    std::string out = "circle " + std::to_string(family.circle().ticks()) + "\n";
    for (const auto & a : family.arcs()) {
        if (a.is_full())
            out += "arc full\n";
        else
            out += "arc " + to_string(a.left()) + " " + to_string(a.right()) + "\n";
    }
    for (const auto & c : chains)
        out += "chain " + join_indices(c) + "\n";
    return out;
}

void save_instance(const std::filesystem::path & path, const ArcFamily & family,
                   const std::vector<std::vector<ArcIndex>> & chains)
{
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write " + path.string());
    out << format_instance(family, chains);
}

std::vector<ArcIndex> parse_index_list(std::string_view text)
{
    std::vector<ArcIndex> out;
    while (!text.empty()) {
        auto comma = text.find(',');
        auto item = text.substr(0, comma);
        auto v = to_int(item);
        if (!v || *v < 0)
            throw Error("bad arc index '" + std::string(item) + "'");
        out.push_back(static_cast<ArcIndex>(*v));
        if (comma == std::string_view::npos)
            break;
        text = text.substr(comma + 1);
    }
    return out;
}

std::string join_indices(const std::vector<ArcIndex> & v, std::string_view sep)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            out += sep;
        out += std::to_string(v[i]);
    }
    return out;
}

} // namespace arcpath
