#ifndef RESIL_INGEST_HPP
#define RESIL_INGEST_HPP

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "resil/series.hpp"

namespace resil {

struct SourceDescriptor {
    std::string kind; // "file" or "http"
    std::string location;
    std::string indicator_code;
    std::string retrieved_at; // ISO-8601 UTC
    std::string content_hash; // hex digest of the raw bytes

    std::string describe() const;
};

struct MalformedHeader : std::runtime_error {
    explicit MalformedHeader(const std::string& what)
        : std::runtime_error("malformed WDI header: " + what) {}
};
struct MalformedRow : std::runtime_error {
    MalformedRow(size_t row_index, const std::string& what)
        : std::runtime_error("malformed WDI row " + std::to_string(row_index) + ": " + what),
          row(row_index) {}
    size_t row;
};
struct EmptyFile : std::runtime_error {
    EmptyFile() : std::runtime_error("empty WDI file") {}
};
struct DuplicateCode : std::runtime_error {
    explicit DuplicateCode(const std::string& code)
        : std::runtime_error("duplicate ISO3 code: " + code) {}
};
struct UnknownContinentLabel : std::runtime_error {
    explicit UnknownContinentLabel(const std::string& label)
        : std::runtime_error("unknown continent label: " + label) {}
};
struct HttpError : std::runtime_error {
    explicit HttpError(int status)
        : std::runtime_error("http error, status " + std::to_string(status)), status(status) {}
    int status;
};
struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& what)
        : std::runtime_error("unexpected API payload: " + what) {}
};

struct WdiParseResult {
    std::vector<AnnualSeries> series;
    size_t skipped_rows = 0; // trailing metadata / short rows tolerated with a warning count
    SourceDescriptor source;
};

/// Parses the World Bank wide CSV export: header with Country Name, Country
/// Code, Indicator Name, Indicator Code, then one column per year. Empty
/// cells are missing; RFC-4180 quoting; a UTF-8 BOM is tolerated.
WdiParseResult parse_wdi_csv(const std::filesystem::path& file);
WdiParseResult parse_wdi_csv_text(const std::string& text, const std::string& location);

/// Serializes series back to the canonical wide layout (used by fixtures and
/// the ingest round trip).
std::string serialize_wdi_csv(const std::vector<AnnualSeries>& series,
                              const std::map<std::string, std::string>& country_names,
                              const std::string& indicator_name, int first_year, int last_year);

/// Pages through the World Bank indicator API, snapshots the raw JSON to
/// snapshot_path first, then parses the snapshot. Retries 429/5xx with
/// exponential backoff, at most 5 attempts per page.
struct FetchResult {
    std::vector<AnnualSeries> series;
    SourceDescriptor source;
};
FetchResult fetch_indicator(const std::string& base_url, const std::string& indicator_code,
                            const std::string& country_filter, int year_from, int year_to,
                            const std::filesystem::path& snapshot_path);

/// Parses a saved API snapshot (JSON array of page payloads).
std::vector<AnnualSeries> parse_api_snapshot(const std::string& json_text,
                                             const std::string& indicator_code);

/// Shipped CSV of ISO3, name, continent (six-continent scheme).
std::map<std::string, CountryMeta> load_country_continents(const std::filesystem::path& file);

/// FNV-1a 64-bit hex digest used for provenance hashes.
std::string content_hash(const std::string& bytes);

} // namespace resil

#endif
