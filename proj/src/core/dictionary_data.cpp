/**
 * @file dictionary_data.cpp
 * @brief Embedded curated data dictionary entries
 */

#include <cstddef>
#include <cstdint>

namespace dcmval::core::detail {

struct raw_entry {
    std::uint16_t group;
    std::uint16_t element;
    const char* keyword;
    const char* vr;
    const char* vm;
};

extern const raw_entry embedded_entries[];
extern const std::size_t embedded_entry_count;

// clang-format off
const raw_entry embedded_entries[] = {
    {0x0002, 0x0000, "FileMetaInformationGroupLength", "UL", "1"},
    {0x0002, 0x0001, "FileMetaInformationVersion", "OB", "1"},
    {0x0002, 0x0002, "MediaStorageSOPClassUID", "UI", "1"},
    {0x0002, 0x0003, "MediaStorageSOPInstanceUID", "UI", "1"},
    {0x0002, 0x0010, "TransferSyntaxUID", "UI", "1"},
    {0x0002, 0x0012, "ImplementationClassUID", "UI", "1"},
    {0x0002, 0x0013, "ImplementationVersionName", "SH", "1"},
    {0x0002, 0x0016, "SourceApplicationEntityTitle", "AE", "1"},
    {0x0002, 0x0017, "SendingApplicationEntityTitle", "AE", "1"},
    {0x0002, 0x0018, "ReceivingApplicationEntityTitle", "AE", "1"},
    {0x0002, 0x0100, "PrivateInformationCreatorUID", "UI", "1"},
    {0x0002, 0x0102, "PrivateInformation", "OB", "1"},
    {0x0008, 0x0005, "SpecificCharacterSet", "CS", "1-n"},
    {0x0008, 0x0008, "ImageType", "CS", "2-n"},
    {0x0008, 0x0012, "InstanceCreationDate", "DA", "1"},
    {0x0008, 0x0013, "InstanceCreationTime", "TM", "1"},
    {0x0008, 0x0014, "InstanceCreatorUID", "UI", "1"},
    {0x0008, 0x0016, "SOPClassUID", "UI", "1"},
    {0x0008, 0x0018, "SOPInstanceUID", "UI", "1"},
    {0x0008, 0x001A, "RelatedGeneralSOPClassUID", "UI", "1-n"},
    {0x0008, 0x001B, "OriginalSpecializedSOPClassUID", "UI", "1"},
    {0x0008, 0x0020, "StudyDate", "DA", "1"},
    {0x0008, 0x0021, "SeriesDate", "DA", "1"},
    {0x0008, 0x0022, "AcquisitionDate", "DA", "1"},
    {0x0008, 0x0023, "ContentDate", "DA", "1"},
    {0x0008, 0x002A, "AcquisitionDateTime", "DT", "1"},
    {0x0008, 0x0030, "StudyTime", "TM", "1"},
    {0x0008, 0x0031, "SeriesTime", "TM", "1"},
    {0x0008, 0x0032, "AcquisitionTime", "TM", "1"},
    {0x0008, 0x0033, "ContentTime", "TM", "1"},
    {0x0008, 0x0050, "AccessionNumber", "SH", "1"},
    {0x0008, 0x0051, "IssuerOfAccessionNumberSequence", "SQ", "1"},
    {0x0008, 0x0052, "QueryRetrieveLevel", "CS", "1"},
    {0x0008, 0x0054, "RetrieveAETitle", "AE", "1-n"},
    {0x0008, 0x0056, "InstanceAvailability", "CS", "1"},
    {0x0008, 0x0058, "FailedSOPInstanceUIDList", "UI", "1-n"},
    {0x0008, 0x0060, "Modality", "CS", "1"},
    {0x0008, 0x0061, "ModalitiesInStudy", "CS", "1-n"},
    {0x0008, 0x0064, "ConversionType", "CS", "1"},
    {0x0008, 0x0068, "PresentationIntentType", "CS", "1"},
    {0x0008, 0x0070, "Manufacturer", "LO", "1"},
    {0x0008, 0x0080, "InstitutionName", "LO", "1"},
    {0x0008, 0x0081, "InstitutionAddress", "ST", "1"},
    {0x0008, 0x0082, "InstitutionCodeSequence", "SQ", "1"},
    {0x0008, 0x0090, "ReferringPhysicianName", "PN", "1"},
    {0x0008, 0x0092, "ReferringPhysicianAddress", "ST", "1"},
    {0x0008, 0x0094, "ReferringPhysicianTelephoneNumbers", "SH", "1-n"},
    {0x0008, 0x0096, "ReferringPhysicianIdentificationSequence", "SQ", "1"},
    {0x0008, 0x0100, "CodeValue", "SH", "1"},
    {0x0008, 0x0101, "ExtendedCodeValue", "LO", "1"},
    {0x0008, 0x0102, "CodingSchemeDesignator", "SH", "1"},
    {0x0008, 0x0103, "CodingSchemeVersion", "SH", "1"},
    {0x0008, 0x0104, "CodeMeaning", "LO", "1"},
    {0x0008, 0x0105, "MappingResource", "CS", "1"},
    {0x0008, 0x0106, "ContextGroupVersion", "DT", "1"},
    {0x0008, 0x010F, "ContextIdentifier", "CS", "1"},
    {0x0008, 0x0110, "CodingSchemeIdentificationSequence", "SQ", "1"},
    {0x0008, 0x0201, "TimezoneOffsetFromUTC", "SH", "1"},
    {0x0008, 0x1010, "StationName", "SH", "1"},
    {0x0008, 0x1030, "StudyDescription", "LO", "1"},
    {0x0008, 0x1032, "ProcedureCodeSequence", "SQ", "1"},
    {0x0008, 0x103E, "SeriesDescription", "LO", "1"},
    {0x0008, 0x1040, "InstitutionalDepartmentName", "LO", "1"},
    {0x0008, 0x1048, "PhysiciansOfRecord", "PN", "1-n"},
    {0x0008, 0x1050, "PerformingPhysicianName", "PN", "1-n"},
    {0x0008, 0x1060, "NameOfPhysiciansReadingStudy", "PN", "1-n"},
    {0x0008, 0x1070, "OperatorsName", "PN", "1-n"},
    {0x0008, 0x1080, "AdmittingDiagnosesDescription", "LO", "1-n"},
    {0x0008, 0x1090, "ManufacturerModelName", "LO", "1"},
    {0x0008, 0x1110, "ReferencedStudySequence", "SQ", "1"},
    {0x0008, 0x1111, "ReferencedPerformedProcedureStepSequence", "SQ", "1"},
    {0x0008, 0x1115, "ReferencedSeriesSequence", "SQ", "1"},
    {0x0008, 0x1120, "ReferencedPatientSequence", "SQ", "1"},
    {0x0008, 0x1140, "ReferencedImageSequence", "SQ", "1"},
    {0x0008, 0x1150, "ReferencedSOPClassUID", "UI", "1"},
    {0x0008, 0x1155, "ReferencedSOPInstanceUID", "UI", "1"},
    {0x0008, 0x1160, "ReferencedFrameNumber", "IS", "1-n"},
    {0x0008, 0x1199, "ReferencedSOPSequence", "SQ", "1"},
    {0x0008, 0x2111, "DerivationDescription", "ST", "1"},
    {0x0008, 0x2112, "SourceImageSequence", "SQ", "1"},
    {0x0008, 0x2218, "AnatomicRegionSequence", "SQ", "1"},
    {0x0008, 0x3010, "IrradiationEventUID", "UI", "1-n"},
    {0x0008, 0x9215, "DerivationCodeSequence", "SQ", "1"},
    {0x0010, 0x0010, "PatientName", "PN", "1"},
    {0x0010, 0x0020, "PatientID", "LO", "1"},
    {0x0010, 0x0021, "IssuerOfPatientID", "LO", "1"},
    {0x0010, 0x0022, "TypeOfPatientID", "CS", "1"},
    {0x0010, 0x0024, "IssuerOfPatientIDQualifiersSequence", "SQ", "1"},
    {0x0010, 0x0030, "PatientBirthDate", "DA", "1"},
    {0x0010, 0x0032, "PatientBirthTime", "TM", "1"},
    {0x0010, 0x0040, "PatientSex", "CS", "1"},
    {0x0010, 0x0050, "PatientInsurancePlanCodeSequence", "SQ", "1"},
    {0x0010, 0x0101, "PatientPrimaryLanguageCodeSequence", "SQ", "1"},
    {0x0010, 0x1000, "OtherPatientIDs", "LO", "1-n"},
    {0x0010, 0x1001, "OtherPatientNames", "PN", "1-n"},
    {0x0010, 0x1002, "OtherPatientIDsSequence", "SQ", "1"},
    {0x0010, 0x1005, "PatientBirthName", "PN", "1"},
    {0x0010, 0x1010, "PatientAge", "AS", "1"},
    {0x0010, 0x1020, "PatientSize", "DS", "1"},
    {0x0010, 0x1030, "PatientWeight", "DS", "1"},
    {0x0010, 0x1040, "PatientAddress", "LO", "1"},
    {0x0010, 0x1060, "PatientMotherBirthName", "PN", "1"},
    {0x0010, 0x1080, "MilitaryRank", "LO", "1"},
    {0x0010, 0x1090, "MedicalRecordLocator", "LO", "1"},
    {0x0010, 0x2000, "MedicalAlerts", "LO", "1-n"},
    {0x0010, 0x2110, "Allergies", "LO", "1-n"},
    {0x0010, 0x2150, "CountryOfResidence", "LO", "1"},
    {0x0010, 0x2152, "RegionOfResidence", "LO", "1"},
    {0x0010, 0x2154, "PatientTelephoneNumbers", "SH", "1-n"},
    {0x0010, 0x2160, "EthnicGroup", "SH", "1"},
    {0x0010, 0x2180, "Occupation", "SH", "1"},
    {0x0010, 0x21A0, "SmokingStatus", "CS", "1"},
    {0x0010, 0x21B0, "AdditionalPatientHistory", "LT", "1"},
    {0x0010, 0x21C0, "PregnancyStatus", "US", "1"},
    {0x0010, 0x21D0, "LastMenstrualDate", "DA", "1"},
    {0x0010, 0x21F0, "PatientReligiousPreference", "LO", "1"},
    {0x0010, 0x2201, "PatientSpeciesDescription", "LO", "1"},
    {0x0010, 0x2202, "PatientSpeciesCodeSequence", "SQ", "1"},
    {0x0010, 0x2203, "PatientSexNeutered", "CS", "1"},
    {0x0010, 0x2292, "PatientBreedDescription", "LO", "1"},
    {0x0010, 0x2293, "PatientBreedCodeSequence", "SQ", "1"},
    {0x0010, 0x2294, "BreedRegistrationSequence", "SQ", "1"},
    {0x0010, 0x2297, "ResponsiblePerson", "PN", "1"},
    {0x0010, 0x2298, "ResponsiblePersonRole", "CS", "1"},
    {0x0010, 0x2299, "ResponsibleOrganization", "LO", "1"},
    {0x0010, 0x4000, "PatientComments", "LT", "1"},
    {0x0010, 0x9431, "ExaminedBodyThickness", "FL", "1"},
    {0x0012, 0x0062, "PatientIdentityRemoved", "CS", "1"},
    {0x0012, 0x0063, "DeidentificationMethod", "LO", "1-n"},
    {0x0012, 0x0064, "DeidentificationMethodCodeSequence", "SQ", "1"},
    {0x0018, 0x0010, "ContrastBolusAgent", "LO", "1"},
    {0x0018, 0x0012, "ContrastBolusAgentSequence", "SQ", "1"},
    {0x0018, 0x0014, "ContrastBolusAdministrationRouteSequence", "SQ", "1"},
    {0x0018, 0x0015, "BodyPartExamined", "CS", "1"},
    {0x0018, 0x0020, "ScanningSequence", "CS", "1-n"},
    {0x0018, 0x0021, "SequenceVariant", "CS", "1-n"},
    {0x0018, 0x0022, "ScanOptions", "CS", "1-n"},
    {0x0018, 0x0023, "MRAcquisitionType", "CS", "1"},
    {0x0018, 0x0050, "SliceThickness", "DS", "1"},
    {0x0018, 0x0060, "KVP", "DS", "1"},
    {0x0018, 0x0080, "RepetitionTime", "DS", "1"},
    {0x0018, 0x0081, "EchoTime", "DS", "1"},
    {0x0018, 0x0087, "MagneticFieldStrength", "DS", "1"},
    {0x0018, 0x0088, "SpacingBetweenSlices", "DS", "1"},
    {0x0018, 0x0090, "DataCollectionDiameter", "DS", "1"},
    {0x0018, 0x0091, "EchoTrainLength", "IS", "1"},
    {0x0018, 0x1000, "DeviceSerialNumber", "LO", "1"},
    {0x0018, 0x1004, "PlateID", "LO", "1"},
    {0x0018, 0x1012, "DateOfSecondaryCapture", "DA", "1"},
    {0x0018, 0x1014, "TimeOfSecondaryCapture", "TM", "1"},
    {0x0018, 0x1016, "SecondaryCaptureDeviceManufacturer", "LO", "1"},
    {0x0018, 0x1018, "SecondaryCaptureDeviceManufacturerModelName", "LO", "1"},
    {0x0018, 0x1019, "SecondaryCaptureDeviceSoftwareVersions", "LO", "1-n"},
    {0x0018, 0x1020, "SoftwareVersions", "LO", "1-n"},
    {0x0018, 0x1022, "VideoImageFormatAcquired", "SH", "1"},
    {0x0018, 0x1023, "DigitalImageFormatAcquired", "LO", "1"},
    {0x0018, 0x1030, "ProtocolName", "LO", "1"},
    {0x0018, 0x1040, "ContrastBolusRoute", "LO", "1"},
    {0x0018, 0x1041, "ContrastBolusVolume", "DS", "1"},
    {0x0018, 0x1042, "ContrastBolusStartTime", "TM", "1"},
    {0x0018, 0x1043, "ContrastBolusStopTime", "TM", "1"},
    {0x0018, 0x1044, "ContrastBolusTotalDose", "DS", "1"},
    {0x0018, 0x1046, "ContrastFlowRate", "DS", "1-n"},
    {0x0018, 0x1047, "ContrastFlowDuration", "DS", "1-n"},
    {0x0018, 0x1048, "ContrastBolusIngredient", "CS", "1"},
    {0x0018, 0x1049, "ContrastBolusIngredientConcentration", "DS", "1"},
    {0x0018, 0x1050, "SpatialResolution", "DS", "1"},
    {0x0018, 0x1063, "FrameTime", "DS", "1"},
    {0x0018, 0x1088, "HeartRate", "IS", "1"},
    {0x0018, 0x1100, "ReconstructionDiameter", "DS", "1"},
    {0x0018, 0x1110, "DistanceSourceToDetector", "DS", "1"},
    {0x0018, 0x1111, "DistanceSourceToPatient", "DS", "1"},
    {0x0018, 0x1120, "GantryDetectorTilt", "DS", "1"},
    {0x0018, 0x1130, "TableHeight", "DS", "1"},
    {0x0018, 0x1140, "RotationDirection", "CS", "1"},
    {0x0018, 0x1150, "ExposureTime", "IS", "1"},
    {0x0018, 0x1151, "XRayTubeCurrent", "IS", "1"},
    {0x0018, 0x1152, "Exposure", "IS", "1"},
    {0x0018, 0x1153, "ExposureInuAs", "IS", "1"},
    {0x0018, 0x1155, "RadiationSetting", "CS", "1"},
    {0x0018, 0x1160, "FilterType", "SH", "1"},
    {0x0018, 0x1164, "ImagerPixelSpacing", "DS", "2"},
    {0x0018, 0x1166, "Grid", "CS", "1-n"},
    {0x0018, 0x1170, "GeneratorPower", "IS", "1"},
    {0x0018, 0x1190, "FocalSpots", "DS", "1-n"},
    {0x0018, 0x1200, "DateOfLastCalibration", "DA", "1-n"},
    {0x0018, 0x1201, "TimeOfLastCalibration", "TM", "1-n"},
    {0x0018, 0x1210, "ConvolutionKernel", "SH", "1-n"},
    {0x0018, 0x1260, "PlateType", "SH", "1"},
    {0x0018, 0x1261, "PhosphorType", "LO", "1"},
    {0x0018, 0x1400, "AcquisitionDeviceProcessingDescription", "LO", "1"},
    {0x0018, 0x1401, "AcquisitionDeviceProcessingCode", "LO", "1"},
    {0x0018, 0x1402, "CassetteOrientation", "CS", "1"},
    {0x0018, 0x1403, "CassetteSize", "CS", "1"},
    {0x0018, 0x1404, "ExposuresOnPlate", "US", "1"},
    {0x0018, 0x1405, "RelativeXRayExposure", "IS", "1"},
    {0x0018, 0x1508, "PositionerType", "CS", "1"},
    {0x0018, 0x1510, "PositionerPrimaryAngle", "DS", "1"},
    {0x0018, 0x1511, "PositionerSecondaryAngle", "DS", "1"},
    {0x0018, 0x5100, "PatientPosition", "CS", "1"},
    {0x0018, 0x5101, "ViewPosition", "CS", "1"},
    {0x0018, 0x6000, "Sensitivity", "DS", "1"},
    {0x0018, 0x7001, "DetectorTemperature", "DS", "1"},
    {0x0018, 0x7004, "DetectorType", "CS", "1"},
    {0x0018, 0x700A, "DetectorID", "SH", "1"},
    {0x0018, 0x9004, "ContentQualification", "CS", "1"},
    {0x0020, 0x000D, "StudyInstanceUID", "UI", "1"},
    {0x0020, 0x000E, "SeriesInstanceUID", "UI", "1"},
    {0x0020, 0x0010, "StudyID", "SH", "1"},
    {0x0020, 0x0011, "SeriesNumber", "IS", "1"},
    {0x0020, 0x0012, "AcquisitionNumber", "IS", "1"},
    {0x0020, 0x0013, "InstanceNumber", "IS", "1"},
    {0x0020, 0x0020, "PatientOrientation", "CS", "2"},
    {0x0020, 0x0032, "ImagePositionPatient", "DS", "3"},
    {0x0020, 0x0037, "ImageOrientationPatient", "DS", "6"},
    {0x0020, 0x0052, "FrameOfReferenceUID", "UI", "1"},
    {0x0020, 0x0060, "Laterality", "CS", "1"},
    {0x0020, 0x0062, "ImageLaterality", "CS", "1"},
    {0x0020, 0x0100, "TemporalPositionIdentifier", "IS", "1"},
    {0x0020, 0x0105, "NumberOfTemporalPositions", "IS", "1"},
    {0x0020, 0x0200, "SynchronizationFrameOfReferenceUID", "UI", "1"},
    {0x0020, 0x1040, "PositionReferenceIndicator", "LO", "1"},
    {0x0020, 0x1041, "SliceLocation", "DS", "1"},
    {0x0020, 0x1208, "NumberOfStudyRelatedInstances", "IS", "1"},
    {0x0020, 0x4000, "ImageComments", "LT", "1"},
    {0x0028, 0x0002, "SamplesPerPixel", "US", "1"},
    {0x0028, 0x0004, "PhotometricInterpretation", "CS", "1"},
    {0x0028, 0x0006, "PlanarConfiguration", "US", "1"},
    {0x0028, 0x0008, "NumberOfFrames", "IS", "1"},
    {0x0028, 0x0009, "FrameIncrementPointer", "AT", "1-n"},
    {0x0028, 0x0010, "Rows", "US", "1"},
    {0x0028, 0x0011, "Columns", "US", "1"},
    {0x0028, 0x0030, "PixelSpacing", "DS", "2"},
    {0x0028, 0x0034, "PixelAspectRatio", "IS", "2"},
    {0x0028, 0x0100, "BitsAllocated", "US", "1"},
    {0x0028, 0x0101, "BitsStored", "US", "1"},
    {0x0028, 0x0102, "HighBit", "US", "1"},
    {0x0028, 0x0103, "PixelRepresentation", "US", "1"},
    {0x0028, 0x0106, "SmallestImagePixelValue", "US", "1"},
    {0x0028, 0x0107, "LargestImagePixelValue", "US", "1"},
    {0x0028, 0x0300, "QualityControlImage", "CS", "1"},
    {0x0028, 0x0301, "BurnedInAnnotation", "CS", "1"},
    {0x0028, 0x0302, "RecognizableVisualFeatures", "CS", "1"},
    {0x0028, 0x1040, "PixelIntensityRelationship", "CS", "1"},
    {0x0028, 0x1041, "PixelIntensityRelationshipSign", "SS", "1"},
    {0x0028, 0x1050, "WindowCenter", "DS", "1-n"},
    {0x0028, 0x1051, "WindowWidth", "DS", "1-n"},
    {0x0028, 0x1052, "RescaleIntercept", "DS", "1"},
    {0x0028, 0x1053, "RescaleSlope", "DS", "1"},
    {0x0028, 0x1054, "RescaleType", "LO", "1"},
    {0x0028, 0x1055, "WindowCenterWidthExplanation", "LO", "1-n"},
    {0x0028, 0x2000, "ICCProfile", "OB", "1"},
    {0x0028, 0x2110, "LossyImageCompression", "CS", "1"},
    {0x0028, 0x2112, "LossyImageCompressionRatio", "DS", "1-n"},
    {0x0028, 0x2114, "LossyImageCompressionMethod", "CS", "1-n"},
    {0x0028, 0x3000, "ModalityLUTSequence", "SQ", "1"},
    {0x0028, 0x3002, "LUTDescriptor", "US", "3"},
    {0x0028, 0x3003, "LUTExplanation", "LO", "1"},
    {0x0028, 0x3004, "ModalityLUTType", "LO", "1"},
    {0x0028, 0x3006, "LUTData", "US", "1-n"},
    {0x0028, 0x3010, "VOILUTSequence", "SQ", "1"},
    {0x0032, 0x1032, "RequestingPhysician", "PN", "1"},
    {0x0032, 0x1033, "RequestingService", "LO", "1"},
    {0x0032, 0x1060, "RequestedProcedureDescription", "LO", "1"},
    {0x0032, 0x1064, "RequestedProcedureCodeSequence", "SQ", "1"},
    {0x0038, 0x0010, "AdmissionID", "LO", "1"},
    {0x0038, 0x0300, "CurrentPatientLocation", "LO", "1"},
    {0x0038, 0x0500, "PatientState", "LO", "1"},
    {0x0040, 0x0007, "ScheduledProcedureStepDescription", "LO", "1"},
    {0x0040, 0x0008, "ScheduledProtocolCodeSequence", "SQ", "1"},
    {0x0040, 0x0009, "ScheduledProcedureStepID", "SH", "1"},
    {0x0040, 0x0032, "UniversalEntityID", "UT", "1"},
    {0x0040, 0x0033, "UniversalEntityIDType", "CS", "1"},
    {0x0040, 0x0035, "IdentifierTypeCode", "CS", "1"},
    {0x0040, 0x0036, "AssigningFacilitySequence", "SQ", "1"},
    {0x0040, 0x0039, "AssigningJurisdictionCodeSequence", "SQ", "1"},
    {0x0040, 0x003A, "AssigningAgencyOrDepartmentCodeSequence", "SQ", "1"},
    {0x0040, 0x0241, "PerformedStationAETitle", "AE", "1"},
    {0x0040, 0x0244, "PerformedProcedureStepStartDate", "DA", "1"},
    {0x0040, 0x0245, "PerformedProcedureStepStartTime", "TM", "1"},
    {0x0040, 0x0253, "PerformedProcedureStepID", "SH", "1"},
    {0x0040, 0x0254, "PerformedProcedureStepDescription", "LO", "1"},
    {0x0040, 0x0260, "PerformedProtocolCodeSequence", "SQ", "1"},
    {0x0040, 0x0275, "RequestAttributesSequence", "SQ", "1"},
    {0x0040, 0x0555, "AcquisitionContextSequence", "SQ", "1"},
    {0x0040, 0x1001, "RequestedProcedureID", "SH", "1"},
    {0x0040, 0x1002, "ReasonForTheRequestedProcedure", "LO", "1"},
    {0x0040, 0x2016, "PlacerOrderNumberImagingServiceRequest", "LO", "1"},
    {0x0040, 0x2017, "FillerOrderNumberImagingServiceRequest", "LO", "1"},
    {0x0040, 0xA043, "ConceptNameCodeSequence", "SQ", "1"},
    {0x0040, 0xA124, "UID", "UI", "1"},
    {0x0040, 0xA170, "PurposeOfReferenceCodeSequence", "SQ", "1"},
    {0x0040, 0xA730, "ContentSequence", "SQ", "1"},
    {0x0054, 0x0220, "ViewCodeSequence", "SQ", "1"},
    {0x0054, 0x0222, "ViewModifierCodeSequence", "SQ", "1"},
    {0x0088, 0x0140, "StorageMediaFileSetUID", "UI", "1"},
    {0x0400, 0x0561, "OriginalAttributesSequence", "SQ", "1"},
    {0x2050, 0x0020, "PresentationLUTShape", "CS", "1"},
    {0x7FE0, 0x0010, "PixelData", "OW", "1"},
};
// clang-format on

const std::size_t embedded_entry_count = sizeof(embedded_entries) / sizeof(embedded_entries[0]);

}  // namespace dcmval::core::detail
