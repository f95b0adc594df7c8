#include "gviews/bench/workspace.hpp"

#include "gviews/error.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fcntl.h>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace gviews::bench {

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error(ErrorKind::MissingFile, p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const fs::path& p, const std::string& content) {
    const fs::path tmp = p.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorKind::Internal, "cannot write " + tmp.string());
        out << content;
        if (!out.flush()) throw Error(ErrorKind::Internal, "short write to " + tmp.string());
    }
    fs::rename(tmp, p);
}

fs::path Workspace::default_root() {
    if (const char* env = std::getenv("GVIEWS_WORKSPACE"); env && *env) return env;
    return fs::current_path() / "gviews-workspace";
}

Workspace::Workspace(fs::path root) : root_(std::move(root)) {
    for (const char* d : {"graphs", "collections", "runs"}) fs::create_directories(root_ / d);
    lock_ = root_ / ".lock";
    const int fd = ::open(lock_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd < 0) {
        lock_.clear();
        throw Error(ErrorKind::WorkspaceLocked,
                    (root_ / ".lock").string() + " exists; another command is running (remove it if stale)");
    }
    const auto pid = std::to_string(::getpid()) + "\n";
    [[maybe_unused]] auto n = ::write(fd, pid.data(), pid.size());
    ::close(fd);
    try {
        load_manifest();
    } catch (...) {
        fs::remove(lock_);
        throw;
    }
}

Workspace::~Workspace() {
    std::error_code ec;
    if (!lock_.empty()) fs::remove(lock_, ec);
}

void Workspace::load_manifest() {
    const auto path = root_ / "manifest.json";
    if (!fs::exists(path)) return;
    json m;
    try {
        m = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Internal, "corrupt manifest: " + std::string(e.what()));
    }
    const json graphs = m.value("graphs", json::object());
    for (const auto& [name, j] : graphs.items()) {
        graphs_[name] = {name, j.at("kind"), j.value("source", ""), j.at("nodes"), j.at("edges")};
    }
    const json collections = m.value("collections", json::object());
    for (const auto& [name, j] : collections.items()) {
        CollectionEntry c;
        c.name = name;
        c.graph = j.at("graph");
        c.kind = j.at("kind");
        c.views = j.at("views").get<std::vector<std::string>>();
        c.ordering = j.value("ordering", "default");
        c.diffs = j.value("diffs", 0ULL);
        c.edges = j.value("edges", 0ULL);
        c.cct_ms = j.value("cct_ms", 0.0);
        c.ordering_ms = j.value("ordering_ms", 0.0);
        collections_[name] = std::move(c);
    }
    const json runs = m.value("runs", json::object());
    for (const auto& [name, j] : runs.items()) {
        runs_[name] = {name, j.at("collection"), j.at("algorithm"), j.at("mode"), j.at("total_ms")};
    }
}

void Workspace::save_manifest() const {
    json m = {{"graphs", json::object()}, {"collections", json::object()}, {"runs", json::object()}};
    for (const auto& [n, g] : graphs_) {
        m["graphs"][n] = {{"kind", g.kind}, {"nodes", g.nodes}, {"edges", g.edges}};
        if (!g.source.empty()) m["graphs"][n]["source"] = g.source;
    }
    for (const auto& [n, c] : collections_) {
        m["collections"][n] = {{"graph", c.graph},   {"kind", c.kind},     {"views", c.views},
                               {"ordering", c.ordering}, {"diffs", c.diffs}, {"edges", c.edges},
                               {"cct_ms", c.cct_ms}, {"ordering_ms", c.ordering_ms}};
    }
    for (const auto& [n, r] : runs_) {
        m["runs"][n] = {{"collection", r.collection},
                        {"algorithm", r.algorithm},
                        {"mode", r.mode},
                        {"total_ms", r.total_ms}};
    }
    write_file_atomic(root_ / "manifest.json", m.dump(2) + "\n");
}

fs::path Workspace::stage(const std::string& kind, const std::string& name) const {
    if (name.empty() || name.find('/') != std::string::npos || name[0] == '.') {
        throw Error(ErrorKind::InvalidArgument, "bad name '" + name + "'");
    }
    auto dir = root_ / kind / ("." + name + ".staging");
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void Workspace::commit(const fs::path& staged, const fs::path& final,
                       const std::function<void()>& register_entry) {
    const fs::path old = final.parent_path() / ("." + final.filename().string() + ".old");
    fs::remove_all(old);
    if (fs::exists(final)) fs::rename(final, old);
    fs::rename(staged, final);
    try {
        register_entry();
        save_manifest();
    } catch (...) {
        fs::remove_all(final);
        if (fs::exists(old)) fs::rename(old, final);
        throw;
    }
    fs::remove_all(old);
}

void Workspace::add_graph(const GraphEntry& entry, const PropertyGraph& g) {
    if (graphs_.count(entry.name)) throw Error(ErrorKind::NameExists, "graph " + entry.name);
    const auto dir = stage("graphs", entry.name);
    try {
        write_graph(g, dir / "nodes.csv", dir / "edges.csv");
        write_file_atomic(dir / (entry.name + ".idmap"), format_id_map(g));
    } catch (...) {
        fs::remove_all(dir);
        throw;
    }
    GraphEntry e = entry;
    e.nodes = g.num_nodes();
    e.edges = g.num_edges();
    commit(dir, root_ / "graphs" / entry.name, [&] { graphs_[e.name] = e; });
}

PropertyGraph Workspace::load_graph(const std::string& name) const {
    if (!graphs_.count(name)) throw Error(ErrorKind::NotFound, "no graph named " + name);
    const auto dir = root_ / "graphs" / name;
    return gviews::load_graph(dir / "nodes.csv", dir / "edges.csv");
}

void Workspace::add_collection(const CollectionEntry& entry, const EdgeDifferenceStream& eds,
                               const std::string& gvdl) {
    if (collections_.count(entry.name)) throw Error(ErrorKind::NameExists, "collection " + entry.name);
    const auto dir = stage("collections", entry.name);
    try {
        write_file_atomic(dir / "eds.csv", serialize_eds(eds));
        write_file_atomic(dir / "definition.gvdl", gvdl);
    } catch (...) {
        fs::remove_all(dir);
        throw;
    }
    commit(dir, root_ / "collections" / entry.name, [&] { collections_[entry.name] = entry; });
}

void Workspace::add_view(const CollectionEntry& entry, const std::vector<EdgeId>& edges,
                         const std::string& gvdl) {
    if (collections_.count(entry.name)) throw Error(ErrorKind::NameExists, "view " + entry.name);
    const auto dir = stage("collections", entry.name);
    try {
        std::string s = "edge_id\n";
        for (auto e : edges) s += std::to_string(e) + "\n";
        write_file_atomic(dir / "edges.csv", s);
        write_file_atomic(dir / "definition.gvdl", gvdl);
    } catch (...) {
        fs::remove_all(dir);
        throw;
    }
    commit(dir, root_ / "collections" / entry.name, [&] { collections_[entry.name] = entry; });
}

const CollectionEntry& Workspace::collection(const std::string& name) const {
    auto it = collections_.find(name);
    if (it == collections_.end()) throw Error(ErrorKind::NotFound, "no collection named " + name);
    return it->second;
}

EdgeDifferenceStream Workspace::load_collection(const std::string& name) const {
    const auto& c = collection(name);
    const auto dir = root_ / "collections" / name;
    if (c.kind == "collection") return parse_eds(read_file(dir / "eds.csv"));
    std::vector<EdgeDiff> diffs;
    std::istringstream in(read_file(dir / "edges.csv"));
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line))
        if (!line.empty()) diffs.push_back({static_cast<EdgeId>(std::stoul(line)), 1});
    return EdgeDifferenceStream(name, {name}, ViewOrder::identity(1), {std::move(diffs)});
}

void Workspace::put_run(const RunEntry& entry, const std::function<void(const fs::path&)>& write) {
    const auto dir = stage("runs", entry.name);
    try {
        write(dir);
    } catch (...) {
        fs::remove_all(dir);
        throw;
    }
    commit(dir, root_ / "runs" / entry.name, [&] { runs_[entry.name] = entry; });
}

}  // namespace gviews::bench
