/**
 * @file fixtures.cpp
 * @brief Shared test fixtures
 */

#include "fixtures.hpp"


#ifndef DCMVAL_DESCRIPTIONS_DIR
#error "DCMVAL_DESCRIPTIONS_DIR must point at the shipped descriptions directory"
#endif

namespace dcmval::testkit {

using core::dicom_tag;
using core::vr_type;

std::filesystem::path descriptions_dir() {
    return DCMVAL_DESCRIPTIONS_DIR;
}

std::shared_ptr<const description::registry> shipped_registry() {
    static const auto reg =
        std::make_shared<const description::registry>(description::load_repository(descriptions_dir()));
    return reg;
}

const description::iod_description& cr_iod() {
    return *description::resolve_iod(*shipped_registry(), cr_sop_class);
}

void put(core::data_set& data, dicom_tag tag, vr_type vr, std::string_view text) {
    data.set(core::make_text_element(tag, vr, text));
}

core::data_set make_cr_dataset() {
    core::data_set d;
    // SOP Common
    put(d, {0x0008, 0x0005}, vr_type::CS, "ISO_IR 100");
    put(d, {0x0008, 0x0008}, vr_type::CS, "ORIGINAL\\PRIMARY");
    put(d, {0x0008, 0x0016}, vr_type::UI, cr_sop_class);
    put(d, {0x0008, 0x0018}, vr_type::UI, "1.2.826.0.1.3680043.10.999.1");
    // General Study
    put(d, {0x0008, 0x0020}, vr_type::DA, "20240115");
    put(d, {0x0008, 0x0030}, vr_type::TM, "101500");
    put(d, {0x0008, 0x0050}, vr_type::SH, "ACC0042");
    put(d, {0x0008, 0x0060}, vr_type::CS, "CR");
    put(d, {0x0008, 0x0080}, vr_type::LO, "General Hospital");
    put(d, {0x0008, 0x0090}, vr_type::PN, "Smith^Anna");
    put(d, {0x0008, 0x1070}, vr_type::PN, "Tech^Tom");
    // Patient
    put(d, {0x0010, 0x0010}, vr_type::PN, "Doe^John");
    put(d, {0x0010, 0x0020}, vr_type::LO, "PID12345");
    put(d, {0x0010, 0x0021}, vr_type::LO, "HOSPITAL_A");
    {
        core::data_set qualifiers;
        put(qualifiers, {0x0040, 0x0032}, vr_type::UT, "1.2.3.4");
        put(qualifiers, {0x0040, 0x0033}, vr_type::CS, "ISO");
        d.set(core::make_sequence({0x0010, 0x0024}, {qualifiers}));
    }
    put(d, {0x0010, 0x0030}, vr_type::DA, "19800101");
    put(d, {0x0010, 0x0040}, vr_type::CS, "M");
    put(d, {0x0010, 0x1010}, vr_type::AS, "045Y");
    put(d, {0x0010, 0x1030}, vr_type::DS, "72.5");
    // Contrast/Bolus
    put(d, {0x0018, 0x0010}, vr_type::LO, "Iohexol");
    {
        core::data_set code;
        put(code, {0x0008, 0x0100}, vr_type::SH, "C-B0322");
        put(code, {0x0008, 0x0102}, vr_type::SH, "SRT");
        put(code, {0x0008, 0x0104}, vr_type::LO, "Iohexol");
        d.set(core::make_sequence({0x0018, 0x0012}, {code}));
    }
    put(d, {0x0018, 0x1048}, vr_type::CS, "IODINE");
    // General Series / General Image
    put(d, {0x0020, 0x000D}, vr_type::UI, "1.2.826.0.1.3680043.10.999.2");
    put(d, {0x0020, 0x000E}, vr_type::UI, "1.2.826.0.1.3680043.10.999.3");
    put(d, {0x0020, 0x0010}, vr_type::SH, "S1");
    put(d, {0x0020, 0x0011}, vr_type::IS, "1");
    put(d, {0x0020, 0x0013}, vr_type::IS, "1");
    put(d, {0x0020, 0x0020}, vr_type::CS, "A\\F");
    put(d, {0x0020, 0x0060}, vr_type::CS, "L");
    put(d, {0x0028, 0x0008}, vr_type::IS, "1");
    return d;
}

core::data_element make_pixel_data(std::size_t bytes) {
    core::data_element e;
    e.tag = core::tags::pixel_data;
    e.vr = vr_type::OW;
    e.value.resize(bytes + (bytes % 2));
    for (std::size_t i = 0; i < e.value.size(); ++i) {
        e.value[i] = static_cast<std::uint8_t>(i * 31u);
    }
    return e;
}

core::dicom_file make_file(core::data_set data, std::string_view transfer_syntax) {
    const auto sop_class = core::get_string(data, core::tags::sop_class_uid).value_or(std::string(cr_sop_class));
    const auto sop_instance =
        core::get_string(data, core::tags::sop_instance_uid).value_or("1.2.826.0.1.3680043.10.999.9");
    core::dicom_file f;
    f.meta = core::make_file_meta(sop_class, sop_instance, transfer_syntax);
    f.data = std::move(data);
    return f;
}

std::vector<std::uint8_t> to_bytes(const core::dicom_file& file) {
    return core::serialize_file(file.meta, file.data);
}

int line_of(std::string_view text, std::string_view needle) {
    const auto pos = text.find(needle);
    if (pos == std::string_view::npos) {
        return 0;
    }
    int line = 1;
    for (std::size_t i = 0; i < pos; ++i) {
        line += text[i] == '\n' ? 1 : 0;
    }
    return line;
}

std::string replace_once(std::string_view text, std::string_view from, std::string_view to) {
    std::string out(text);
    const auto pos = out.find(from);
    if (pos != std::string::npos) {
        out.replace(pos, from.size(), to);
    }
    return out;
}

}  // namespace dcmval::testkit
