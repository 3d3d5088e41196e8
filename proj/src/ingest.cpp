#include "resil/ingest.hpp"

#include "resil/csv.hpp"

#include <charconv>
#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include <httplib.h>

namespace resil {

std::string content_hash(const std::string& bytes) {
    // FNV-1a, 64-bit
    uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string SourceDescriptor::describe() const {
    return kind + " " + location + " indicator=" + indicator_code + " hash=" + content_hash +
           (retrieved_at.empty() ? "" : " retrieved=" + retrieved_at);
}

namespace {

std::string now_utc_iso8601() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

using csv::read_record;

bool parse_year(const std::string& s, int& year) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), year);
    return ec == std::errc{} && ptr == s.data() + s.size() && year >= 1000 && year <= 3000;
}

bool blank(const std::string& s) {
    return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

} // namespace

WdiParseResult parse_wdi_csv_text(const std::string& text, const std::string& location) {
    std::string body = text;
    if (body.size() >= 3 && body.compare(0, 3, "\xEF\xBB\xBF") == 0) body.erase(0, 3);
    if (blank(body)) throw EmptyFile{};

    std::istringstream in(body);
    std::vector<std::string> header;
    if (!read_record(in, header) || header.size() < 5) throw MalformedHeader("too few columns");
    if (header[0] != "Country Name" || header[1] != "Country Code" ||
        header[2] != "Indicator Name" || header[3] != "Indicator Code")
        throw MalformedHeader("expected Country Name, Country Code, Indicator Name, Indicator Code");

    std::vector<int> years(header.size() - 4);
    for (size_t i = 4; i < header.size(); ++i) {
        if (blank(header[i]) && i == header.size() - 1) {
            // Some exports carry a trailing empty column.
            years.pop_back();
            break;
        }
        if (!parse_year(header[i], years[i - 4]))
            throw MalformedHeader("non-year column '" + header[i] + "'");
    }

    WdiParseResult result;
    result.source = {"file", location, "", "", content_hash(text)};
    std::vector<std::string> fields;
    size_t row_index = 1;
    while (read_record(in, fields)) {
        ++row_index;
        if (fields.size() == 1 && blank(fields[0])) continue;
        if (fields.size() < 4 || blank(fields[1]) || blank(fields[3])) {
            ++result.skipped_rows; // trailing metadata rows
            continue;
        }
        AnnualSeries series;
        series.country_code = fields[1];
        series.indicator_code = fields[3];
        for (size_t i = 0; i < years.size(); ++i) {
            const size_t col = i + 4;
            if (col >= fields.size()) break;
            if (blank(fields[col])) continue;
            const std::string& cell = fields[col];
            double value;
            auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
            if (ec != std::errc{} || ptr != cell.data() + cell.size())
                throw MalformedRow(row_index, "non-numeric cell '" + cell + "'");
            series.values[years[i]] = value;
        }
        if (result.source.indicator_code.empty())
            result.source.indicator_code = series.indicator_code;
        result.series.push_back(std::move(series));
    }
    return result;
}

WdiParseResult parse_wdi_csv(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_wdi_csv_text(buf.str(), file.string());
}

std::string serialize_wdi_csv(const std::vector<AnnualSeries>& series,
                              const std::map<std::string, std::string>& country_names,
                              const std::string& indicator_name, int first_year, int last_year) {
    std::ostringstream out;
    out << "Country Name,Country Code,Indicator Name,Indicator Code";
    for (int y = first_year; y <= last_year; ++y) out << ',' << y;
    out << '\n';
    for (const auto& s : series) {
        auto nit = country_names.find(s.country_code);
        out << '"' << (nit == country_names.end() ? s.country_code : nit->second) << "\","
            << s.country_code << ",\"" << indicator_name << "\"," << s.indicator_code;
        for (int y = first_year; y <= last_year; ++y) {
            out << ',';
            if (auto v = s.at(y)) {
                char buf[32];
                auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), *v);
                (void)ec;
                out << std::string_view(buf, static_cast<size_t>(ptr - buf));
            }
        }
        out << '\n';
    }
    return out.str();
}

std::vector<AnnualSeries> parse_api_snapshot(const std::string& json_text,
                                             const std::string& indicator_code) {
    nlohmann::json pages;
    try {
        pages = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(e.what());
    }
    if (!pages.is_array()) throw SchemaError("snapshot is not an array of pages");

    std::map<std::string, AnnualSeries> by_country;
    for (const auto& page : pages) {
        if (!page.is_array() || page.size() < 2 || !page[1].is_array())
            throw SchemaError("page is not a [meta, observations] pair");
        for (const auto& obs : page[1]) {
            std::string code;
            if (obs.contains("countryiso3code") && obs["countryiso3code"].is_string())
                code = obs["countryiso3code"].get<std::string>();
            if (code.empty() && obs.contains("country") && obs["country"].contains("id"))
                code = obs["country"]["id"].get<std::string>();
            if (code.empty()) throw SchemaError("observation without country code");
            if (!obs.contains("date")) throw SchemaError("observation without date");
            int year;
            const std::string date = obs["date"].get<std::string>();
            if (!parse_year(date, year)) continue; // non-annual granularity, skip
            auto& series = by_country[code];
            series.country_code = code;
            series.indicator_code = indicator_code;
            if (obs.contains("value") && obs["value"].is_number())
                series.values[year] = obs["value"].get<double>();
        }
    }
    std::vector<AnnualSeries> out;
    out.reserve(by_country.size());
    for (auto& [code, s] : by_country) out.push_back(std::move(s));
    return out;
}

FetchResult fetch_indicator(const std::string& base_url, const std::string& indicator_code,
                            const std::string& country_filter, int year_from, int year_to,
                            const std::filesystem::path& snapshot_path) {
    // Split base_url into host part and path prefix.
    std::string host = base_url, prefix;
    const auto scheme_pos = host.find("://");
    const auto path_pos = host.find('/', scheme_pos == std::string::npos ? 0 : scheme_pos + 3);
    if (path_pos != std::string::npos) {
        prefix = host.substr(path_pos);
        host = host.substr(0, path_pos);
    }
    httplib::Client client(host);
    client.set_read_timeout(30, 0);

    nlohmann::json snapshot = nlohmann::json::array();
    int page = 1, pages = 1;
    while (page <= pages) {
        const std::string path = prefix + "/country/" +
                                 (country_filter.empty() ? "all" : country_filter) +
                                 "/indicator/" + indicator_code + "?format=json&per_page=1000" +
                                 "&date=" + std::to_string(year_from) + ":" +
                                 std::to_string(year_to) + "&page=" + std::to_string(page);
        httplib::Result res;
        int last_status = 0;
        for (int attempt = 0; attempt < 5; ++attempt) {
            if (attempt > 0)
                std::this_thread::sleep_for(std::chrono::milliseconds(100 << attempt));
            res = client.Get(path);
            if (!res) {
                last_status = 0;
                continue;
            }
            last_status = res->status;
            if (res->status == 429 || res->status >= 500) continue;
            break;
        }
        if (!res || last_status == 0) throw HttpError(0);
        if (res->status != 200) throw HttpError(res->status);

        nlohmann::json payload;
        try {
            payload = nlohmann::json::parse(res->body);
        } catch (const nlohmann::json::parse_error& e) {
            throw SchemaError(e.what());
        }
        if (!payload.is_array() || payload.empty() || !payload[0].contains("pages"))
            throw SchemaError("missing page metadata envelope");
        pages = payload[0]["pages"].get<int>();
        snapshot.push_back(std::move(payload));
        ++page;
    }

    // Snapshot to disk first; parse only the snapshot.
    const std::string text = snapshot.dump();
    {
        std::ofstream out(snapshot_path, std::ios::binary);
        out << text;
    }
    FetchResult result;
    result.series = parse_api_snapshot(text, indicator_code);
    result.source = {"http", base_url, indicator_code, now_utc_iso8601(), content_hash(text)};
    return result;
}

std::map<std::string, CountryMeta> load_country_continents(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + file.string());

    std::map<std::string, CountryMeta> out;
    std::vector<std::string> fields;
    bool header_skipped = false;
    while (read_record(in, fields)) {
        if (fields.size() == 1 && blank(fields[0])) continue;
        if (!header_skipped) {
            header_skipped = true;
            if (fields.size() >= 1 && fields[0] == "iso3") continue;
        }
        if (fields.size() < 3) throw std::runtime_error("continent table row needs 3 fields");
        const auto continent = continent_from_string(fields[2]);
        if (!continent) throw UnknownContinentLabel(fields[2]);
        CountryMeta meta{fields[0], fields[1], *continent};
        if (!out.emplace(meta.country_code, meta).second) throw DuplicateCode(meta.country_code);
    }
    return out;
}

} // namespace resil
