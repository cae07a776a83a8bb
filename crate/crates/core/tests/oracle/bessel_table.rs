// @generated by gen_bessel_table.py (mpmath, 40 digits); do not edit.
#[allow(clippy::excessive_precision)]
pub const K0_TABLE: [(f64, f64); 50] = [
    (0.001, 7.0236888005623813228),
    (0.0013160964422098528, 6.7490200356060068521),
    (0.0017321098451974323, 6.4743521716398510245),
    (0.0022796236047809993, 6.1996858045384065366),
    (0.003000204515829873, 5.9250219197508893122),
    (0.00394855848918563, 5.6503621433457384228),
    (0.0051966837794747188, 5.3757091518355157102),
    (0.006839337033456328, 5.1010673387197094245),
    (0.0090012271368059612, 4.8264438939887229128),
    (0.011846483010273107, 4.5518505440315343479),
    (0.015591114142519902, 4.2773063404196209403),
    (0.020519409853058161, 4.0028421010533154115),
    (0.027005522303855643, 3.7285074290877288132),
    (0.035541871824123238, 3.4543817057501773336),
    (0.046776531057207207, 3.1805911193698604285),
    (0.061562426103309087, 2.9073346926587369645),
    (0.081022089968372055, 2.6349233990820865862),
    (0.10663288434778107, 2.3638376986491011015),
    (0.14033915971268934, 2.0948098046667413396),
    (0.18469986880059075, 1.8289368619579772919),
    (0.24308284020508408, 1.5678282871628212835),
    (0.31992046115617734, 1.3137818861596369667),
    (0.42104618071778038, 1.0699647989086967243),
    (0.55413738044871741, 0.84054238548068313031),
    (0.72929823490404466, 0.63065030985392215324),
    (0.95982681226713862, 0.44605520728367416482),
    (1.2632246527624054, 0.29233885137514313448),
    (1.6625254712123783, 0.17354879180507005327),
    (2.1880438577458703, 0.090568976411899849276),
    (2.8796767365784608, 0.039937980850028904343),
    (3.7899323077253917, 0.014124925900875949857),
    (4.9879164264135651, 0.0037403017553455751534),
    (6.5645790628429754, 0.0006772899059137151313),
    (8.6396191492129297, 0.000074424596296209752161),
    (11.370572024327252, 4.2404380692063164706e-6),
    (14.96476938710798, 1.0183429477968238784e-7),
    (19.69507974886373, 7.8474180280071629165e-10),
    (25.920624386518874, 1.3551818884956614072e-12),
    (34.11404153495544, 3.2695250301941000523e-16),
    (44.897368693554, 5.9166250876565755873e-21),
    (59.08926720217044, 3.5420269883882342805e-27),
    (77.767174337563858, 2.3884351376545384671e-35),
    (102.34910146638116, 4.3937979680895378349e-46),
    (134.70128830327945, 3.4115073924923063618e-60),
    (177.27988629702975, 9.588451431208542929e-79),
    (233.31742763088809, 3.8493093938278198895e-103),
    (307.06823641056661, 3.1349119437484912584e-135),
    (404.13141345560069, 1.9169979226324273794e-177),
    (531.8759154341551, 5.5498043736474561766e-233),
    (700.0, 4.669776431685376881e-306),
];
#[allow(clippy::excessive_precision)]
pub const J0_TABLE: [(f64, f64); 50] = [
    (0.001, 0.999999750000015625),
    (0.0013894954943731376, 0.99999951732562602284),
    (0.0019306977288832501, 0.99999906810178702991),
    (0.0026826957952797259, 0.99999820078662678988),
    (0.00372759372031494, 0.99999652626428078119),
    (0.0051794746792312111, 0.99999329327175688095),
    (0.0071968567300115206, 0.99998705135521898346),
    (0.01, 0.99997500015624956597),
    (0.013894954943731377, 0.99995173313921131391),
    (0.019306977288832503, 0.99990681232805635622),
    (0.026826957952797256, 0.99982008667451711221),
    (0.037275937203149402, 0.99965265629239439017),
    (0.051794746792312114, 0.99932943849368706171),
    (0.071968567300115208, 0.99870555044110712573),
    (0.10000000000000001, 0.997501562066040032),
    (0.13894954943731377, 0.99517907692028626248),
    (0.19306977288832503, 0.99070270409904188074),
    (0.26826957952797259, 0.9820886258607133803),
    (0.37275937203149401, 0.96556312232074219996),
    (0.51794746792312107, 0.93404876924912770966),
    (0.71968567300115205, 0.87464502278439451121),
    (1.0, 0.76519768655796655145),
    (1.3894954943731377, 0.57253801995435353354),
    (1.9306977288832501, 0.26399165318708753038),
    (2.6826957952797259, -0.1347622271332422),
    (3.7275937203149403, -0.40055837951158252998),
    (5.1794746792312107, -0.11732538471969121335),
    (7.19685673001152, 0.2952400362735051653),
    (10.0, -0.2459357644513483352),
    (13.894954943731376, 0.18416549773423363748),
    (19.306977288832503, 0.17149655268803723285),
    (26.826957952797258, 0.095246034716107111778),
    (37.275937203149404, 0.045896834846296059754),
    (51.794746792312111, 0.081760204185724476329),
    (71.968567300115197, -0.044726661221178199521),
    (100.0, 0.019985850304223122424),
    (138.94954943731378, 0.067536674354762457905),
    (193.06977288832502, -0.045831871854325185573),
    (268.26957952797255, -0.043899514183242517905),
    (372.75937203149402, 0.012413562717525737773),
    (517.94746792312117, -0.012672473691381237814),
    (719.68567300115205, -0.025742085156741063245),
    (1000.0, 0.024786686152420174561),
    (1389.4954943731377, 0.021234984555984999209),
    (1930.6977288832502, 0.01019940569510931377),
    (2682.6957952797256, 0.0081961021406200651685),
    (3727.5937203149401, 0.0083326375740741366083),
    (5179.4746792312108, 0.0024868022914800088607),
    (7196.8567300115201, -0.0023573237645835284804),
    (10000.0, -0.0070961603533888014773),
];
