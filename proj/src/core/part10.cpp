/**
 * @file part10.cpp
 * @brief Part-10 parser and serializer
 */

#include "dcmval/core/part10.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>

namespace dcmval::core {

namespace {

constexpr std::uint32_t undefined_length = 0xFFFFFFFFu;
constexpr int max_nesting = 64;

std::string offset_text(std::size_t offset) {
    return " at offset " + std::to_string(offset);
}

class reader {
public:
    reader(std::span<const std::uint8_t> bytes, std::size_t pos, encoding enc,
           const dictionary& dict)
        : bytes_(bytes), pos_(pos), enc_(enc), dict_(dict) {}

    [[nodiscard]] std::size_t pos() const noexcept { return pos_; }
    [[nodiscard]] std::size_t remaining() const noexcept { return bytes_.size() - pos_; }

    /// Elements until `end`, or until a tag outside `only_group` when nonzero.
    data_set read_data_set(std::size_t end, std::uint16_t only_group = 0) {
        data_set ds;
        while (pos_ < end) {
            need(4, "tag");
            const auto tag = peek_tag();
            if (only_group != 0 && tag.group != only_group) {
                break;
            }
            if (tag.group == 0xFFFE) {
                fail(parse_errc::malformed, "unexpected delimitation tag " + tag.to_string());
            }
            append(ds, read_element(end));
        }
        if (pos_ > end) {
            fail(parse_errc::truncated_element, "element crosses the enclosing item boundary");
        }
        return ds;
    }

private:
    [[noreturn]] void fail(parse_errc code, const std::string& what) const {
        throw parse_error(code, pos_, what + offset_text(pos_));
    }

    void need(std::size_t n, const char* what) const {
        if (remaining() < n) {
            fail(parse_errc::truncated_element, std::string("truncated ") + what);
        }
    }

    std::uint16_t u16_at(std::size_t p) const {
        const auto a = bytes_[p];
        const auto b = bytes_[p + 1];
        return enc_.little_endian ? static_cast<std::uint16_t>(a | (b << 8))
                                  : static_cast<std::uint16_t>((a << 8) | b);
    }

    std::uint32_t u32_at(std::size_t p) const {
        const std::uint32_t lo = u16_at(p);
        const std::uint32_t hi = u16_at(p + 2);
        return enc_.little_endian ? (lo | (hi << 16)) : ((lo << 16) | hi);
    }

    dicom_tag peek_tag() const { return {u16_at(pos_), u16_at(pos_ + 2)}; }

    std::uint32_t read_u32() {
        need(4, "length");
        auto v = u32_at(pos_);
        pos_ += 4;
        return v;
    }

    void append(data_set& ds, data_element element) {
        if (!ds.empty()) {
            const auto last = std::prev(ds.end())->first;
            if (element.tag == last) {
                fail(parse_errc::duplicate_tag, "duplicate tag " + element.tag.to_string());
            }
            if (element.tag < last) {
                fail(parse_errc::tag_order,
                     "tag " + element.tag.to_string() + " follows " + last.to_string());
            }
        }
        ds.set(std::move(element));
    }

    data_element read_element(std::size_t end) {
        need(8, "element header");
        data_element e;
        e.tag = peek_tag();
        pos_ += 4;

        std::uint32_t length = 0;
        if (enc_.explicit_vr) {
            const std::string code{static_cast<char>(bytes_[pos_]), static_cast<char>(bytes_[pos_ + 1])};
            auto vr = vr_from_string(code);
            if (!vr) {
                fail(parse_errc::unknown_vr, "unknown VR '" + code + "' for " + e.tag.to_string());
            }
            e.vr = *vr;
            pos_ += 2;
            if (uses_long_length(e.vr)) {
                need(6, "element header");
                if (bytes_[pos_] != 0 || bytes_[pos_ + 1] != 0) {
                    fail(parse_errc::malformed, "nonzero reserved bytes in " + e.tag.to_string());
                }
                pos_ += 2;
                length = read_u32();
            } else {
                length = u16_at(pos_);
                pos_ += 2;
            }
        } else {
            e.vr = dict_.implicit_vr(e.tag);
            length = read_u32();
            if (length == undefined_length && e.vr == vr_type::UN) {
                e.vr = vr_type::SQ;
            }
        }

        if (e.vr == vr_type::SQ) {
            read_sequence(e, length, end);
            return e;
        }
        if (length == undefined_length) {
            fail(parse_errc::unsupported_transfer_syntax,
                 "undefined length on non-sequence element " + e.tag.to_string());
        }
        if (length > remaining() || pos_ + length > end) {
            fail(parse_errc::truncated_element,
                 "value of " + e.tag.to_string() + " declares " + std::to_string(length) +
                     " bytes");
        }
        if (length % 2 != 0) {
            fail(parse_errc::odd_length, "odd value length on " + e.tag.to_string());
        }
        e.value.assign(bytes_.begin() + static_cast<std::ptrdiff_t>(pos_),
                       bytes_.begin() + static_cast<std::ptrdiff_t>(pos_ + length));
        pos_ += length;
        return e;
    }

    void read_sequence(data_element& e, std::uint32_t length, std::size_t end) {
        if (++depth_ > max_nesting) {
            fail(parse_errc::malformed, "sequence nesting too deep");
        }
        e.undefined_length = length == undefined_length;
        std::size_t seq_end = end;
        if (!e.undefined_length) {
            if (length > remaining() || pos_ + length > end) {
                fail(parse_errc::truncated_element,
                     "sequence " + e.tag.to_string() + " declares " + std::to_string(length) +
                         " bytes");
            }
            seq_end = pos_ + length;
        }
        while (e.undefined_length || pos_ < seq_end) {
            need(8, "item header");
            const auto tag = peek_tag();
            pos_ += 4;
            const auto item_length = read_u32();
            if (tag == tags::sequence_delimitation && e.undefined_length) {
                if (item_length != 0) {
                    fail(parse_errc::malformed, "nonzero sequence delimiter length");
                }
                break;
            }
            if (tag != tags::item) {
                fail(parse_errc::malformed,
                     "expected item tag in " + e.tag.to_string() + ", found " + tag.to_string());
            }
            if (item_length == undefined_length) {
                e.items.push_back(read_undefined_item(seq_end));
            } else {
                if (item_length > remaining() || pos_ + item_length > seq_end) {
                    fail(parse_errc::truncated_element, "item length exceeds its sequence");
                }
                e.items.push_back(read_data_set(pos_ + item_length));
            }
        }
        --depth_;
    }

    data_set read_undefined_item(std::size_t end) {
        data_set ds;
        ds.undefined_length_item = true;
        for (;;) {
            need(8, "item content");
            if (pos_ >= end) {
                fail(parse_errc::truncated_element, "unterminated item");
            }
            const auto tag = peek_tag();
            if (tag == tags::item_delimitation) {
                pos_ += 4;
                if (read_u32() != 0) {
                    fail(parse_errc::malformed, "nonzero item delimiter length");
                }
                return ds;
            }
            if (tag.group == 0xFFFE) {
                fail(parse_errc::malformed, "unexpected delimitation tag " + tag.to_string());
            }
            append(ds, read_element(end));
        }
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_;
    encoding enc_;
    const dictionary& dict_;
    int depth_{0};
};

class writer {
public:
    writer(std::vector<std::uint8_t>& out, encoding enc) : out_(out), enc_(enc) {}

    void write_data_set(const data_set& ds) {
        for (const auto& [tag, element] : ds) {
            write_element(element);
        }
    }

    void write_element(const data_element& e) {
        if (e.is_sequence()) {
            write_sequence(e);
            return;
        }
        if (e.value.size() % 2 != 0) {
            throw serialize_error(serialize_errc::odd_unpadded_value,
                                  "odd-length value on " + e.tag.to_string());
        }
        write_header(e.tag, e.vr, e.value.size());
        out_.insert(out_.end(), e.value.begin(), e.value.end());
    }

private:
    void put_u16(std::uint16_t v) {
        if (enc_.little_endian) {
            out_.push_back(static_cast<std::uint8_t>(v & 0xFF));
            out_.push_back(static_cast<std::uint8_t>(v >> 8));
        } else {
            out_.push_back(static_cast<std::uint8_t>(v >> 8));
            out_.push_back(static_cast<std::uint8_t>(v & 0xFF));
        }
    }

    void put_u32(std::uint32_t v) {
        if (enc_.little_endian) {
            put_u16(static_cast<std::uint16_t>(v & 0xFFFF));
            put_u16(static_cast<std::uint16_t>(v >> 16));
        } else {
            put_u16(static_cast<std::uint16_t>(v >> 16));
            put_u16(static_cast<std::uint16_t>(v & 0xFFFF));
        }
    }

    void put_tag(dicom_tag tag) {
        put_u16(tag.group);
        put_u16(tag.element);
    }

    void write_header(dicom_tag tag, vr_type vr, std::size_t length) {
        put_tag(tag);
        if (!enc_.explicit_vr) {
            put_u32(static_cast<std::uint32_t>(length));
            return;
        }
        const auto code = to_string(vr);
        out_.push_back(static_cast<std::uint8_t>(code[0]));
        out_.push_back(static_cast<std::uint8_t>(code[1]));
        if (uses_long_length(vr)) {
            out_.push_back(0);
            out_.push_back(0);
            put_u32(static_cast<std::uint32_t>(length));
        } else {
            if (length > 0xFFFF) {
                throw serialize_error(serialize_errc::value_too_long,
                                      "value of " + tag.to_string() +
                                          " exceeds the 16-bit length field");
            }
            put_u16(static_cast<std::uint16_t>(length));
        }
    }

    void write_sequence(const data_element& e) {
        std::vector<std::uint8_t> body;
        writer inner(body, enc_);
        for (const auto& item : e.items) {
            inner.write_item(item);
        }
        write_header(e.tag, vr_type::SQ, e.undefined_length ? undefined_length : body.size());
        out_.insert(out_.end(), body.begin(), body.end());
        if (e.undefined_length) {
            put_tag(tags::sequence_delimitation);
            put_u32(0);
        }
    }

    void write_item(const data_set& item) {
        std::vector<std::uint8_t> body;
        writer inner(body, enc_);
        inner.write_data_set(item);
        put_tag(tags::item);
        put_u32(item.undefined_length_item ? undefined_length
                                           : static_cast<std::uint32_t>(body.size()));
        out_.insert(out_.end(), body.begin(), body.end());
        if (item.undefined_length_item) {
            put_tag(tags::item_delimitation);
            put_u32(0);
        }
    }

    std::vector<std::uint8_t>& out_;
    encoding enc_;
};

}  // namespace

std::string_view to_string(parse_errc code) noexcept {
    switch (code) {
        case parse_errc::too_short: return "TooShort";
        case parse_errc::missing_magic: return "MissingMagic";
        case parse_errc::truncated_element: return "TruncatedElement";
        case parse_errc::duplicate_tag: return "DuplicateTag";
        case parse_errc::tag_order: return "TagOrder";
        case parse_errc::odd_length: return "OddLength";
        case parse_errc::unknown_vr: return "UnknownVr";
        case parse_errc::unsupported_transfer_syntax: return "UnsupportedTransferSyntax";
        case parse_errc::malformed: return "Malformed";
    }
    return "Unknown";
}

parse_error::parse_error(parse_errc code, std::size_t offset, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), offset_(offset) {}

std::optional<encoding> encoding_for(std::string_view uid) {
    if (uid == transfer_syntax::implicit_vr_little_endian) {
        return implicit_little;
    }
    if (uid == transfer_syntax::explicit_vr_little_endian) {
        return explicit_little;
    }
    if (uid == transfer_syntax::explicit_vr_big_endian) {
        return explicit_big;
    }
    return std::nullopt;
}

dicom_file parse_file(std::span<const std::uint8_t> bytes, const dictionary& dict) {
    constexpr std::size_t header = preamble_size + 4;
    if (bytes.size() < header) {
        throw parse_error(parse_errc::too_short, 0,
                          "input has " + std::to_string(bytes.size()) +
                              " bytes, a Part-10 header needs 132");
    }
    if (!std::equal(dicm_magic.begin(), dicm_magic.end(), bytes.begin() + preamble_size)) {
        throw parse_error(parse_errc::missing_magic, preamble_size, "bytes 128..132 are not DICM");
    }

    dicom_file file;
    std::copy_n(bytes.begin(), preamble_size, file.meta.preamble.begin());

    reader meta_reader(bytes, header, explicit_little, dict);
    file.meta.elements = meta_reader.read_data_set(bytes.size(), 0x0002);
    const auto* ts = file.meta.elements.find(tags::transfer_syntax_uid);
    if (ts == nullptr) {
        throw parse_error(parse_errc::malformed, meta_reader.pos(),
                          "file meta lacks TransferSyntaxUID (0002,0010)");
    }
    file.meta.transfer_syntax_uid = trimmed_text(*ts);
    auto enc = encoding_for(file.meta.transfer_syntax_uid);
    if (!enc) {
        throw parse_error(parse_errc::unsupported_transfer_syntax, meta_reader.pos(),
                          "transfer syntax " + file.meta.transfer_syntax_uid);
    }

    reader body(bytes, meta_reader.pos(), *enc, dict);
    file.data = body.read_data_set(bytes.size());
    return file;
}

data_set parse_data_set(std::span<const std::uint8_t> bytes, encoding enc, const dictionary& dict) {
    reader r(bytes, 0, enc, dict);
    return r.read_data_set(bytes.size());
}

std::vector<std::uint8_t> serialize_data_set(const data_set& data, encoding enc) {
    std::vector<std::uint8_t> out;
    writer w(out, enc);
    w.write_data_set(data);
    return out;
}

std::vector<std::uint8_t> serialize_file(const file_meta& meta, const data_set& data) {
    auto enc = encoding_for(meta.transfer_syntax_uid);
    if (!enc) {
        throw serialize_error(serialize_errc::unsupported_transfer_syntax,
                              "transfer syntax " + meta.transfer_syntax_uid);
    }
    std::vector<std::uint8_t> out(meta.preamble.begin(), meta.preamble.end());
    out.insert(out.end(), dicm_magic.begin(), dicm_magic.end());
    writer(out, explicit_little).write_data_set(meta.elements);
    writer(out, *enc).write_data_set(data);
    return out;
}

std::size_t encoded_size(const data_element& element, encoding enc) {
    std::vector<std::uint8_t> out;
    writer(out, enc).write_element(element);
    return out.size();
}

file_meta make_file_meta(std::string_view sop_class_uid, std::string_view sop_instance_uid,
                         std::string_view transfer_syntax_uid) {
    file_meta meta;
    meta.transfer_syntax_uid = std::string(transfer_syntax_uid);

    data_element version;
    version.tag = {0x0002, 0x0001};
    version.vr = vr_type::OB;
    version.value = {0x00, 0x01};
    meta.elements.set(version);
    meta.elements.set(make_text_element(tags::media_storage_sop_class_uid, vr_type::UI, sop_class_uid));
    meta.elements.set(
        make_text_element(tags::media_storage_sop_instance_uid, vr_type::UI, sop_instance_uid));
    meta.elements.set(make_text_element(tags::transfer_syntax_uid, vr_type::UI, transfer_syntax_uid));
    meta.elements.set(make_text_element({0x0002, 0x0012}, vr_type::UI, "1.2.826.0.1.3680043.10.1001"));
    meta.elements.set(make_text_element({0x0002, 0x0013}, vr_type::SH, "DCMVAL_1"));

    const auto body = serialize_data_set(meta.elements, explicit_little);
    data_element group_length;
    group_length.tag = tags::file_meta_group_length;
    group_length.vr = vr_type::UL;
    const auto n = static_cast<std::uint32_t>(body.size());
    group_length.value = {static_cast<std::uint8_t>(n), static_cast<std::uint8_t>(n >> 8),
                          static_cast<std::uint8_t>(n >> 16), static_cast<std::uint8_t>(n >> 24)};
    meta.elements.set(group_length);
    return meta;
}

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw std::runtime_error("write failed for " + path.string());
    }
}

}  // namespace dcmval::core
