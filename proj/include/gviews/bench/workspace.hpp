#pragma once

#include "gviews/graph/property_graph.hpp"
#include "gviews/views/eds.hpp"

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace gviews::bench {

struct GraphEntry {
    std::string name;
    std::string kind = "base";  // base | aggregate
    std::string source;         // aggregate: the graph it summarizes
    std::size_t nodes = 0;
    std::size_t edges = 0;
};

struct CollectionEntry {
    std::string name;
    std::string graph;
    std::string kind = "collection";  // collection | view
    std::vector<std::string> views;   // processing order
    std::string ordering = "default";
    std::uint64_t diffs = 0;
    std::size_t edges = 0;  // single views
    double cct_ms = 0;
    double ordering_ms = 0;
};

struct RunEntry {
    std::string name;
    std::string collection;
    std::string algorithm;
    std::string mode;
    double total_ms = 0;
};

/// On-disk store: `graphs/<name>/`, `collections/<name>/`, `runs/<name>/`
/// and a `manifest.json` index. Holding a Workspace holds its lock file.
///
/// Every add_* writes into a staging directory first and renames it into
/// place before the manifest is replaced, so a failed command leaves neither
/// files nor manifest entries behind.
class Workspace {
public:
    explicit Workspace(std::filesystem::path root);
    ~Workspace();
    Workspace(const Workspace&) = delete;
    Workspace& operator=(const Workspace&) = delete;

    /// $GVIEWS_WORKSPACE, else ./gviews-workspace.
    static std::filesystem::path default_root();

    const std::filesystem::path& root() const { return root_; }

    const std::map<std::string, GraphEntry>& graphs() const { return graphs_; }
    const std::map<std::string, CollectionEntry>& collections() const { return collections_; }
    const std::map<std::string, RunEntry>& runs() const { return runs_; }

    void add_graph(const GraphEntry& entry, const PropertyGraph& g);
    PropertyGraph load_graph(const std::string& name) const;

    void add_collection(const CollectionEntry& entry, const EdgeDifferenceStream& eds,
                        const std::string& gvdl);
    void add_view(const CollectionEntry& entry, const std::vector<EdgeId>& edges,
                  const std::string& gvdl);
    const CollectionEntry& collection(const std::string& name) const;
    /// Single views come back as a one-position stream.
    EdgeDifferenceStream load_collection(const std::string& name) const;

    /// Replaces any previous run of the same name. `write` fills the
    /// staging directory.
    void put_run(const RunEntry& entry,
                 const std::function<void(const std::filesystem::path&)>& write);

private:
    void load_manifest();
    void save_manifest() const;
    void commit(const std::filesystem::path& staged, const std::filesystem::path& final,
                const std::function<void()>& register_entry);
    std::filesystem::path stage(const std::string& kind, const std::string& name) const;

    std::filesystem::path root_;
    std::filesystem::path lock_;
    std::map<std::string, GraphEntry> graphs_;
    std::map<std::string, CollectionEntry> collections_;
    std::map<std::string, RunEntry> runs_;
};

/// Reads a whole text file. Throws MissingFile.
std::string read_file(const std::filesystem::path& p);
/// Writes via a temporary file and rename.
void write_file_atomic(const std::filesystem::path& p, const std::string& content);

}  // namespace gviews::bench
